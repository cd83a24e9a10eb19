// Hilbert symbols, quaternion algebras over `Q`, and splitting them with a
// certified quadratic extension.
//
// `cargo run --example brauer_split`

use locdeg::certificate::CertificateFile;
use locdeg::verifier::{brauer_split_check, hilbert_symbol, Place, QuaternionAlgebra};
use locdeg::{construct, BaseField, ConstructConfig, Error};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    println!(
        "(2, 3)_2 = {}, (5, 2)_5 = {}",
        hilbert_symbol(2, 3, Place::Finite(2))?,
        hilbert_symbol(5, 2, Place::Finite(5))?
    );

    let cert = construct(BaseField::Rational, 2, 1, 100, &ConstructConfig::default())?;
    let file = CertificateFile::from(cert);
    for (a, b) in [(-1, -1), (-1, 3), (2, 5), (-3, 7), (-1, 103)] {
        let algebra = QuaternionAlgebra::new(a, b)?;
        let places: Vec<String> = algebra.ramified_places()?.iter().map(|p| p.to_string()).collect();
        match brauer_split_check(&file, &algebra) {
            Ok(rep) => println!("{algebra}: ramified at {{{}}}, split by L: {}", places.join(", "), rep.split_by_l),
            Err(Error::RamifiedPlaceOutOfRange { place, bound }) => {
                println!("{algebra}: ramified at {place}, beyond the certified bound {bound}")
            }
            Err(e) => return Err(e.into()),
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
