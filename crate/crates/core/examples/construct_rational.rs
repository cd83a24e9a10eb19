// A quadratic extension of `Q` with local degree 2 at every prime up to 100
// and at the real place, followed by verification of its certificate.
//
// `cargo run --example construct_rational`

use locdeg::verifier::verify_certificate;
use locdeg::{construct, BaseField, ConstructConfig};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let cert = construct(BaseField::Rational, 2, 1, 100, &ConstructConfig::default())?;
    println!("seed field: character mod {} of order {}", cert.l0.modulus, cert.l0.character.order);
    for (i, piece) in cert.pieces.iter().enumerate() {
        println!(
            "piece {}: conductor {} added for p = {}, Frobenius order {}",
            i + 1,
            piece.p,
            piece.target.0,
            piece.target_order
        );
    }
    let short: Vec<_> = cert.table.iter().filter(|e| e.degree != 2).collect();
    println!("{} primes up to {}, {} below degree 2", cert.table.len(), cert.bound, short.len());
    println!("real place degree {:?}", cert.real_place_degree);

    let report = verify_certificate(&cert)?;
    println!("verified: {} primes, {} pieces", report.primes_checked, report.pieces);

    for (ell, r) in [(2, 3), (3, 2)] {
        let c = construct(BaseField::Rational, ell, r, 50, &ConstructConfig::default())?;
        let conductors: Vec<u64> = c.pieces.iter().map(|p| p.p).collect();
        println!("n = {}: conductors {conductors:?}", ell.pow(r));
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
