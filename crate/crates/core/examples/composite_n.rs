// Composite local degree: one construction per prime power, combined.
//
// `cargo run --example composite_n`

use locdeg::verifier::verify_composite;
use locdeg::{compose_for_n, BaseField, ConstructConfig};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for n in [6, 12] {
        let cert = compose_for_n(BaseField::Rational, n, 20, &ConstructConfig::default())?;
        let parts: Vec<String> =
            cert.components.iter().map(|c| format!("{}^{} ({} pieces)", c.ell, c.r, c.pieces.len())).collect();
        println!("n = {n} = {}", parts.join(" * "));
        let degrees: Vec<u64> = cert.table.iter().map(|e| e.degree).collect();
        println!("  local degrees at primes up to 20: {degrees:?}");
        verify_composite(&cert)?;
        println!("  verified");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
