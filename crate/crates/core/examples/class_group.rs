// Class groups of imaginary quadratic fields and their `ell`-primary parts
// with prime-ideal generators.
//
// `cargo run --example class_group`

use locdeg::quadfield::{class_group_l_part, enumerate_class_group};
use locdeg::BaseField;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for (d, ell) in [(-4, 2), (-23, 3), (-47, 5), (-84, 2), (-199, 3)] {
        let field = BaseField::imaginary_quadratic(d)?;
        let (forms, h) = enumerate_class_group(&field);
        let shown: Vec<String> = forms.iter().take(6).map(|f| f.to_string()).collect();
        println!("D = {d}: h = {h}, reduced forms {}{}", shown.join(" "), if forms.len() > 6 { " ..." } else { "" });

        let mut exclude = vec![2, ell];
        exclude.extend(field.ramified_primes());
        let part = class_group_l_part(&field, ell, &exclude)?;
        println!("  {ell}-part of order {} (t = {}), prime-to-{ell} part {}", part.order(), part.t, part.cofactor);
        for ((g, o), alpha) in part.gens.iter().zip(part.orders()).zip(&part.alphas) {
            println!("    a = {g} has class order {o}; a^{o} = ({alpha}), norm {}", alpha.norm(&field));
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
