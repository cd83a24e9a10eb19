// Certificates as JSON: round trip, re-verification, and tamper detection.
//
// `cargo run --example verify_certificate`

use locdeg::certificate::CertificateFile;
use locdeg::verifier::verify_json;
use locdeg::{construct, BaseField, ConstructConfig};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let field = BaseField::imaginary_quadratic(-23)?;
    let cert = construct(field, 2, 1, 40, &ConstructConfig::default())?;
    let json = CertificateFile::from(cert.clone()).to_json();
    println!("certificate: {} bytes, {} pieces", json.len(), cert.pieces.len());
    let report = verify_json(&json)?;
    println!("round trip verified at {} primes", report.primes_checked);

    let mut tampered = cert.clone();
    tampered.table[0].degree = 1;
    let err = verify_json(&CertificateFile::from(tampered).to_json()).expect_err("tampered degree");
    println!("tampered degree: {err}");

    let mut tampered = cert;
    tampered.pieces[0].p = 97;
    tampered.pieces[0].b = None;
    tampered.pieces[0].norm = 97 * 97;
    let err = verify_json(&CertificateFile::from(tampered).to_json()).expect_err("tampered conductor");
    println!("tampered conductor: {err}");
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
