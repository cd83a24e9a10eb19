// Constructions over imaginary quadratic fields: a nontrivial class group
// (`Q(sqrt -23)`), inert conductors, and a base field where the seed field
// falls short above `ell` (`Q(sqrt -2)`).
//
// `cargo run --example imaginary_quadratic`

use locdeg::verifier::verify_certificate;
use locdeg::{construct, BaseField, ConstructConfig};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for (d, ell, r, bound) in [(-23, 3, 1, 50), (-23, 2, 1, 50), (-8, 2, 1, 50), (-4, 2, 2, 50)] {
        let field = BaseField::imaginary_quadratic(d)?;
        let cert = construct(field, ell, r, bound, &ConstructConfig::default())?;
        println!("{field}, n = {}, B = {bound}: t = {}", cert.degree(), cert.t);
        for def in &cert.deficiencies {
            println!("  seed field short at {}: e = {}, local degree {}", def.prime, def.ram_index, def.local_degree);
        }
        for piece in &cert.pieces {
            let conductor = match piece.b {
                Some(b) => format!("[{}, {b}]", piece.p),
                None => format!("({}) inert", piece.p),
            };
            println!("  conductor {conductor} of norm {} for {}", piece.norm, piece.target);
        }
        if cert.pieces.is_empty() {
            println!("  the seed field alone already has full local degree");
        }
        let report = verify_certificate(&cert)?;
        println!("  verified at {} primes", report.primes_checked);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
