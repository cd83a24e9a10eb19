//! The `locdeg` command line.
//!
//! Exit codes: `0` success, `1` usage error (bad arguments, unreadable or
//! unparseable input file, query outside the certified range), `2`
//! verification failed or the algebra is not split, `3` conductor search
//! exhausted, `4` internal inconsistency.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::arith::{factor_with_seed, DEFAULT_RHO_SEED};
use crate::certificate::CertificateFile;
use crate::constructor::{compose_for_n, construct, ConstructConfig};
use crate::error::Error;
use crate::quadfield::{class_group_l_part, enumerate_class_group, BaseField};
use crate::verifier::{brauer_split_check, hilbert_symbol, ramified_places, verify, Place, QuaternionAlgebra};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VERIFY: i32 = 2;
pub const EXIT_EXHAUSTED: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "locdeg", version, about = "Abelian extensions with constant local degree")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct FieldArg {
    /// Discriminant of an imaginary quadratic base field; omit for Q.
    #[arg(long, allow_hyphen_values = true)]
    disc: Option<i64>,
}

impl FieldArg {
    fn field(&self) -> Result<BaseField, Error> {
        match self.disc {
            None => Ok(BaseField::Rational),
            Some(d) => BaseField::imaginary_quadratic(d),
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build an extension and write its certificate.
    Construct {
        #[command(flatten)]
        field: FieldArg,
        /// Target local degree; composite values are split into prime powers.
        #[arg(long)]
        n: u64,
        /// Norm bound B.
        #[arg(long)]
        bound: u64,
        /// Rational primes the conductor search may examine per piece.
        #[arg(long, default_value_t = 100_000)]
        cap: u64,
        /// Give every prime the seed field leaves short its own piece.
        #[arg(long)]
        no_greedy_skip: bool,
        #[arg(long, default_value_t = DEFAULT_RHO_SEED)]
        seed: u64,
        /// Output file; stdout if absent.
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Re-verify a certificate from its file alone.
    Verify {
        cert: PathBuf,
        /// Print the report as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Class group and its ell-primary part.
    ClassGroup {
        #[arg(long, allow_hyphen_values = true)]
        disc: i64,
        #[arg(long)]
        ell: Option<u64>,
    },
    /// Hilbert symbol (a, b)_v over Q, or all ramified places.
    Hilbert {
        #[arg(allow_hyphen_values = true)]
        a: i128,
        #[arg(allow_hyphen_values = true)]
        b: i128,
        /// A prime, or `inf`; all ramified places if absent.
        #[arg(long)]
        place: Option<String>,
    },
    /// Check that a certified field splits the quaternion algebra (a, b)_Q.
    BrauerSplit {
        cert: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        a: i128,
        #[arg(long, allow_hyphen_values = true)]
        b: i128,
    },
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidInput(_) | Error::Precondition(_) | Error::RamifiedPlaceOutOfRange { .. } => EXIT_USAGE,
        Error::MalformedCertificate(_) | Error::MismatchFound { .. } => EXIT_VERIFY,
        Error::SearchExhausted { .. } => EXIT_EXHAUSTED,
        _ => EXIT_INTERNAL,
    }
}

fn fail(e: &Error) -> i32 {
    eprintln!("error: {e}");
    exit_code(e)
}

fn read_certificate(path: &PathBuf) -> Result<CertificateFile, i32> {
    let text = fs::read_to_string(path).map_err(|e| {
        eprintln!("error: cannot read {}: {e}", path.display());
        EXIT_USAGE
    })?;
    CertificateFile::from_json(&text).map_err(|e| {
        eprintln!("error: {}: {e}", path.display());
        EXIT_USAGE
    })
}

fn parse_place(s: &str) -> Result<Place, Error> {
    if s == "inf" || s == "infinity" {
        return Ok(Place::Infinite);
    }
    s.parse::<u64>().map(Place::Finite).map_err(|_| Error::InvalidInput(format!("bad place {s:?}")))
}

/// Run the command line; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match cli.command {
        Command::Construct { field, n, bound, cap, no_greedy_skip, seed, out } => {
            let field = match field.field() {
                Ok(f) => f,
                Err(e) => return fail(&e),
            };
            let config = ConstructConfig { cap, greedy_skip: !no_greedy_skip, seed };
            let factors = if n >= 2 { factor_with_seed(n, seed).0 } else { vec![] };
            let file = if let [(ell, r)] = factors[..] {
                construct(field, ell, r, bound, &config).map(CertificateFile::from)
            } else {
                compose_for_n(field, n, bound, &config).map(CertificateFile::Composite)
            };
            let file = match file {
                Ok(f) => f,
                Err(e) => return fail(&e),
            };
            let json = file.to_json();
            match out {
                Some(path) => {
                    if let Err(e) = fs::write(&path, json + "\n") {
                        eprintln!("error: cannot write {}: {e}", path.display());
                        return EXIT_USAGE;
                    }
                }
                None => {
                    // a closed pipe is not an error worth a panic
                    let _ = writeln!(std::io::stdout(), "{json}");
                }
            }
            EXIT_OK
        }
        Command::Verify { cert, json } => {
            let file = match read_certificate(&cert) {
                Ok(f) => f,
                Err(code) => return code,
            };
            match verify(&file) {
                Ok(rep) => {
                    if json {
                        println!("{}", serde_json::to_string_pretty(&rep).expect("reports serialize"));
                    } else {
                        println!(
                            "ok: {} n = {} bound = {}: {} primes at local degree {}, {} pieces, real place {}",
                            rep.field,
                            rep.n,
                            rep.bound,
                            rep.primes_checked,
                            rep.n,
                            rep.pieces,
                            rep.real_place_degree.map_or("n/a".to_string(), |d| d.to_string()),
                        );
                    }
                    EXIT_OK
                }
                Err(e) => {
                    eprintln!("verification failed: {e}");
                    EXIT_VERIFY
                }
            }
        }
        Command::ClassGroup { disc, ell } => {
            let field = match BaseField::imaginary_quadratic(disc) {
                Ok(f) => f,
                Err(e) => return fail(&e),
            };
            let (forms, h) = enumerate_class_group(&field);
            println!("D = {disc}, h = {h}");
            for f in &forms {
                println!("  {f}");
            }
            if let Some(ell) = ell {
                let mut exclude = vec![2, ell];
                exclude.extend(field.ramified_primes());
                match class_group_l_part(&field, ell, &exclude) {
                    Ok(part) => {
                        println!("{ell}-part: order {}, t = {}", part.order(), part.t);
                        for ((g, o), a) in part.gens.iter().zip(part.orders()).zip(&part.alphas) {
                            println!("  {g}: order {o}, {g}^{o} = ({a})");
                        }
                    }
                    Err(e) => return fail(&e),
                }
            }
            EXIT_OK
        }
        Command::Hilbert { a, b, place } => {
            let result = match place {
                Some(p) => {
                    parse_place(&p).and_then(|v| hilbert_symbol(a, b, v)).map(|s| println!("({a}, {b})_{p} = {s}"))
                }
                None => ramified_places(a, b).map(|places| {
                    let list: Vec<String> = places.iter().map(|p| p.to_string()).collect();
                    println!("({a}, {b})_Q ramifies at {{{}}}", list.join(", "));
                }),
            };
            match result {
                Ok(()) => EXIT_OK,
                Err(e) => fail(&e),
            }
        }
        Command::BrauerSplit { cert, a, b } => {
            let file = match read_certificate(&cert) {
                Ok(f) => f,
                Err(code) => return code,
            };
            let algebra = match QuaternionAlgebra::new(a, b) {
                Ok(x) => x,
                Err(e) => return fail(&e),
            };
            match brauer_split_check(&file, &algebra) {
                Ok(rep) => {
                    for p in &rep.places {
                        println!(
                            "  {}: local degree {}, invariant killed: {}",
                            p.place, p.local_degree, p.kills_invariant
                        );
                    }
                    if rep.split_by_l {
                        println!("{algebra} is split by L");
                        EXIT_OK
                    } else {
                        println!("{algebra} is not split by L");
                        EXIT_VERIFY
                    }
                }
                Err(e) => fail(&e),
            }
        }
    }
}
