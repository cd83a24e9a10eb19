// Frobenius orders in a ray piece against power residues of generators.
//
// If `q^{ell^m} = (alpha)`, the Frobenius of `q` in `L^eps` has order
// dividing `ell^{r-s}` exactly when `alpha` is an `ell^{m+s}`-th power
// modulo `eps`.
//
// `cargo run --example frobenius_vs_residue`

use locdeg::classfield::{frobenius_order_in_ray_piece, in_s, kummer_split_test, Context, RayPiece};
use locdeg::quadfield::{class_dlog, primes_up_to_norm, principal_generator};
use locdeg::BaseField;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let field = BaseField::imaginary_quadratic(-23)?;
    let ctx = Context::new(field, 3, 1)?;
    let d = field.disc() as i128;
    let eps = primes_up_to_norm(&field, 10_000)
        .into_iter()
        .find(|p| !ctx.divides_2_ell_d(p) && !ctx.is_class_generator(p) && in_s(&ctx, p).unwrap_or(false))
        .ok_or("no conductor")?;
    let piece = RayPiece::new(&ctx, &eps)?;
    println!("{field}, ell = 3, conductor {eps} of norm {}", eps.norm());
    for q in primes_up_to_norm(&field, 60) {
        if q == eps {
            continue;
        }
        let ideal = q.to_ideal(&field);
        let m = if class_dlog(&field, &ideal, &ctx.class_part).iter().all(|&c| c == 0) { 0 } else { 1 };
        let alpha = principal_generator(&field, &ideal.pow(3u64.pow(m), d))?;
        let order = frobenius_order_in_ray_piece(&ctx, &piece, &q)?;
        let residues: Vec<bool> =
            (0..=ctx.r).map(|s| kummer_split_test(&ctx, &eps, &alpha, m + s)).collect::<Result<_, _>>()?;
        println!("  q = {q}: class order 3^{m}, alpha = {alpha}, Frobenius order {order}, power residue at s = 0..r: {residues:?}");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
