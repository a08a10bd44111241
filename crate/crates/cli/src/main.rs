//! `localfield`: certified finite-order, witness, integration and tiling
//! computations. Exit codes: 0 finite / root of unity / balanced / verified,
//! 2 infinite / witness / unbalanced / rejected, 1 input error.

use std::io::Read;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use localfield::algebraic::{is_algebraic_integer, root_of_unity_order, ComplexBox};
use localfield::cert::{
    integral_doc, verify_document, AlphaDoc, Document, MeasureDoc, OrderDoc, OrderInput,
    VerdictDoc, WitnessDoc,
};
use localfield::error::{Error, Result};
use localfield::haar::{
    cylinder_measure, integrate, pushforward_cylinder_measure, Cylinder, PolyDensity, PolyMap,
};
use localfield::interval::RationalInterval;
use localfield::parse::{
    parse_algebraic, parse_eigenvalues, parse_matrix, parse_multipoly, parse_poly,
};
use localfield::places::{find_witness_with, NormBound, Place, WitnessConfig, WitnessOutcome};
use localfield::primes::Prime;
use localfield::projaut::{
    certify_diagonal_with, projective_order_with, verify_shell_tiling, InfiniteReason, OrderVerdict,
};
use localfield::rational::{format_rational, parse_rational, to_decimal, Q};

#[derive(Parser)]
#[command(name = "localfield", version, about = "Exact local-field certificates")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Emit a JSON certificate document instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Halvings of the root-isolation tolerance before giving up.
    #[arg(long, default_value_t = 40, global = true)]
    max_doublings: u32,
    /// Trial-division bound when factoring leading coefficients.
    #[arg(long, default_value_t = 1000, global = true)]
    prime_search_bound: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Finite order of a projective automorphism.
    Order {
        /// Matrix rows separated by ';', entries by ',' (e.g. "1,1;0,1").
        #[arg(
            long,
            allow_hyphen_values = true,
            conflicts_with = "eigenvalues",
            required_unless_present = "eigenvalues"
        )]
        matrix: Option<String>,
        /// Eigenvalues a_1;...;a_N of diag(1, a_1, ..., a_N); each a rational
        /// or a polynomial ("[5,-6,5]" lists the leading coefficient first).
        #[arg(long, allow_hyphen_values = true)]
        eigenvalues: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Root-of-unity test, or a place where a root of POLY exceeds 1 in
    /// absolute value.
    Witness {
        /// "[c_n,...,c_0]" (leading coefficient first) or "5x^2 - 6x + 5".
        #[arg(allow_hyphen_values = true)]
        poly: String,
        /// Box "x0,x1,y0,y1" selecting one complex root.
        #[arg(long = "box", allow_hyphen_values = true)]
        selector: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Certified enclosure of the integral of |f|_p^(1/m) over a cylinder.
    Integrate {
        #[arg(long)]
        prime: u64,
        /// Polynomial in x1..xn (x means x1).
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        density: String,
        /// m in |f|^(1/m).
        #[arg(long, default_value_t = 1)]
        root_index: u32,
        #[arg(long, default_value_t = 10)]
        depth: u32,
        /// Number of variables; defaults to the largest index used.
        #[arg(long)]
        nvars: Option<usize>,
        /// Cylinder center "a1,...,an" (default 0).
        #[arg(long, allow_hyphen_values = true)]
        center: Option<String>,
        /// Cylinder depth k in a + p^k Z_p^n.
        #[arg(long, default_value_t = 0)]
        region_depth: u32,
        #[command(flatten)]
        common: Common,
    },
    /// Haar measure of a cylinder, or of its preimage under a map.
    Measure {
        #[arg(long)]
        prime: u64,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        center: String,
        #[arg(long, default_value_t = 0)]
        region_depth: u32,
        /// Map components separated by ';' (pushforward onto the cylinder).
        #[arg(long, allow_hyphen_values = true)]
        map: Option<String>,
        #[arg(long)]
        source_dim: Option<usize>,
        #[arg(long, allow_hyphen_values = true)]
        density: Option<String>,
        #[arg(long, default_value_t = 1)]
        root_index: u32,
        #[arg(long, default_value_t = 10)]
        depth: u32,
        #[command(flatten)]
        common: Common,
    },
    /// Exact measure ledger for the tiling of Q_p* by shells 1 <= |y| < p^s.
    Tile {
        #[arg(long)]
        prime: u64,
        #[arg(long)]
        scale: u32,
        #[arg(long)]
        range: u32,
        #[command(flatten)]
        common: Common,
    },
    /// Recheck a JSON certificate document ("-" reads stdin).
    Verify {
        file: String,
        #[command(flatten)]
        common: Common,
    },
}

enum Outcome {
    Positive,
    Negative,
}

fn config(c: &Common) -> WitnessConfig {
    WitnessConfig {
        max_doublings: c.max_doublings,
        prime_search_bound: c.prime_search_bound,
        ..WitnessConfig::default()
    }
}

fn rationals(s: &str) -> Result<Vec<Q>> {
    s.split(',').map(parse_rational).collect()
}

fn describe_place(place: &Place, bound: &NormBound) -> String {
    let b = match bound {
        NormBound::Rational(q) => format!("{} (~{})", format_rational(q), to_decimal(q, 9)),
        NormBound::PPower { p, exponent } => format!("{p}^({})", format_rational(exponent)),
    };
    match place {
        Place::NonArchimedean { prime, slope, .. } => {
            format!("p-adic place p = {prime}, Newton slope {} (root valuation = -slope), |alpha| >= {b}", format_rational(slope))
        }
        Place::Archimedean {
            root_box,
            root_index,
        } => format!(
            "complex root #{root_index} in {} x {} i, |alpha| >= {b}",
            root_box.real, root_box.imag
        ),
    }
}

fn print_interval(label: &str, iv: &RationalInterval) {
    println!("{label}.lo = {}", format_rational(iv.lo()));
    println!("{label}.hi = {}", format_rational(iv.hi()));
    println!("{label} ~ {} (approximate)", to_decimal(&iv.midpoint(), 12));
}

fn cmd_order(matrix: Option<String>, eigenvalues: Option<String>, c: &Common) -> Result<Outcome> {
    let cfg = config(c);
    let (input, verdict) = match (matrix, eigenvalues) {
        (Some(m), _) => {
            let m = parse_matrix(&m)?;
            let v = projective_order_with(&m, &cfg)?;
            (
                OrderInput::Matrix {
                    matrix: m.to_string(),
                },
                v,
            )
        }
        (None, Some(e)) => {
            let mut eig = vec![parse_algebraic("1")?];
            eig.extend(parse_eigenvalues(&e)?);
            let v = certify_diagonal_with(&eig, &cfg)?;
            let eigenvalues = eig.iter().map(AlphaDoc::from_spec).collect();
            (OrderInput::Eigenvalues { eigenvalues }, v)
        }
        (None, None) => return Err(Error::Invalid("give --matrix or --eigenvalues".into())),
    };
    if c.json {
        let doc = Document::Order(OrderDoc {
            input,
            verdict: VerdictDoc::from_verdict(&verdict),
        });
        println!("{}", doc.to_json());
    } else {
        match &verdict {
            OrderVerdict::FiniteOrder {
                order,
                conditionality,
            } => {
                println!("finite order {order} in PGL ({conditionality:?})")
            }
            OrderVerdict::InfiniteOrder(InfiniteReason::NotSemisimple { minimal_polynomial }) => {
                println!("infinite order: not semisimple, minimal polynomial {minimal_polynomial}")
            }
            OrderVerdict::InfiniteOrder(InfiniteReason::EigenvalueWitness {
                certificate,
                eigenvalue_index,
            }) => {
                let what = match eigenvalue_index {
                    Some(i) => format!("eigenvalue a_{i}"),
                    None => "an eigenvalue ratio".to_string(),
                };
                println!(
                    "infinite order: {what}, root of {}",
                    certificate.alpha.defining_poly()
                );
                println!(
                    "{}",
                    describe_place(&certificate.place, &certificate.norm_bound)
                );
            }
        }
    }
    Ok(if verdict.is_finite() {
        Outcome::Positive
    } else {
        Outcome::Negative
    })
}

fn cmd_witness(poly: &str, selector: Option<String>, c: &Common) -> Result<Outcome> {
    let f = parse_poly(poly)?;
    let mut alpha = localfield::algebraic::AlgebraicNumberSpec::new(&f)?;
    if let Some(s) = selector {
        let v = rationals(&s)?;
        let [x0, x1, y0, y1] =
            <[Q; 4]>::try_from(v).map_err(|_| Error::Invalid("--box needs x0,x1,y0,y1".into()))?;
        alpha = alpha.with_selector(ComplexBox::from_bounds(x0, x1, y0, y1)?)?;
    }
    let outcome = find_witness_with(&alpha, &config(c))?;
    if c.json {
        println!(
            "{}",
            Document::Witness(WitnessDoc::new(&alpha, &outcome)).to_json()
        );
    } else {
        let g = alpha.defining_poly();
        println!("alpha: root of {g} ({:?})", alpha.irreducibility());
        match root_of_unity_order(g)? {
            Some(n) => println!("root_of_unity_order: {n}"),
            None => println!("root_of_unity_order: none"),
        }
        println!("algebraic integer: {}", is_algebraic_integer(g));
        match &outcome {
            WitnessOutcome::RootOfUnity {
                order,
                conditionality,
            } => {
                println!("root of unity of order {order} ({conditionality:?})")
            }
            WitnessOutcome::Witness(cert) => {
                println!("witness: {}", describe_place(&cert.place, &cert.norm_bound));
                if let Some(m) = &cert.modulus {
                    println!("|alpha| in {m}");
                }
                println!("conditionality: {:?}", cert.conditionality);
            }
        }
    }
    Ok(match outcome {
        WitnessOutcome::RootOfUnity { .. } => Outcome::Positive,
        WitnessOutcome::Witness(_) => Outcome::Negative,
    })
}

fn cylinder(prime: Prime, center: Option<&str>, n: usize, depth: u32) -> Result<Cylinder> {
    let c = match center {
        Some(s) => rationals(s)?,
        None => vec![Q::from_integer(0.into()); n],
    };
    if c.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: c.len(),
        });
    }
    Cylinder::new(prime, &c, depth)
}

#[allow(clippy::too_many_arguments)]
fn cmd_integrate(
    prime: u64,
    density: &str,
    root_index: u32,
    depth: u32,
    nvars: Option<usize>,
    center: Option<String>,
    region_depth: u32,
    c: &Common,
) -> Result<Outcome> {
    let p = Prime::new(prime)?;
    let n = match (nvars, &center) {
        (Some(n), _) => n,
        (None, Some(cs)) => cs.split(',').count(),
        (None, None) => parse_multipoly(density, None)?.nvars(),
    };
    let f = parse_multipoly(density, Some(n))?;
    let d = PolyDensity::new(f, root_index)?;
    let region = cylinder(p, center.as_deref(), n, region_depth)?;
    let iv = integrate(&d, &region, depth)?;
    if c.json {
        println!(
            "{}",
            Document::Integral(integral_doc(&d, &region, depth, iv)).to_json()
        );
    } else {
        let root = if root_index == 1 {
            String::new()
        } else {
            format!("^(1/{root_index})")
        };
        println!(
            "density: |{}|{root} on the {prime}-adic cylinder of depth {region_depth}",
            d.poly()
        );
        print_interval("integral", &iv);
        println!("width = {}", format_rational(&iv.width()));
    }
    Ok(Outcome::Positive)
}

#[allow(clippy::too_many_arguments)]
fn cmd_measure(
    prime: u64,
    center: &str,
    region_depth: u32,
    map: Option<String>,
    source_dim: Option<usize>,
    density: Option<String>,
    root_index: u32,
    depth: u32,
    c: &Common,
) -> Result<Outcome> {
    let p = Prime::new(prime)?;
    let b = center.split(',').count();
    let region = cylinder(p, Some(center), b, region_depth)?;
    let doc = match map {
        None => MeasureDoc {
            prime,
            region: region.clone(),
            map: None,
            source_dim: None,
            density: None,
            root_index: 1,
            depth: None,
            interval: RationalInterval::point(cylinder_measure(&region)),
        },
        Some(m) => {
            let parts: Vec<&str> = m.split(';').collect();
            let n = match source_dim {
                Some(n) => n,
                None => parts
                    .iter()
                    .chain(density.as_deref().iter())
                    .map(|s| parse_multipoly(s, None).map(|f| f.nvars()))
                    .collect::<Result<Vec<_>>>()?
                    .into_iter()
                    .max()
                    .unwrap_or(1),
            };
            let comps = parts
                .iter()
                .map(|s| parse_multipoly(s, Some(n)))
                .collect::<Result<Vec<_>>>()?;
            let pi = PolyMap::new(comps)?;
            let f = match &density {
                Some(s) => parse_multipoly(s, Some(n))?,
                None => localfield::haar::MultiPoly::one(n),
            };
            let d = PolyDensity::new(f, root_index)?;
            let iv = pushforward_cylinder_measure(&pi, &region, &d, depth)?;
            MeasureDoc {
                prime,
                region: region.clone(),
                map: Some(pi.components().iter().map(|c| c.to_string()).collect()),
                source_dim: Some(n),
                density: density.map(|_| d.poly().to_string()),
                root_index,
                depth: Some(depth),
                interval: iv,
            }
        }
    };
    if c.json {
        println!("{}", Document::Measure(doc).to_json());
    } else {
        print_interval("measure", &doc.interval);
    }
    Ok(Outcome::Positive)
}

fn cmd_tile(prime: u64, scale: u32, range: u32, c: &Common) -> Result<Outcome> {
    let ledger = verify_shell_tiling(Prime::new(prime)?, scale, range)?;
    let balanced = ledger.balanced;
    if c.json {
        println!("{}", Document::Tiling(ledger).to_json());
    } else {
        println!(
            "shell 1 <= |y| < {prime}^{scale}: mu = {}",
            format_rational(&ledger.shell_measure)
        );
        for t in &ledger.translates {
            println!(
                "  N = {:>3}: spheres [{}, {}), measure {}",
                t.n,
                t.first_sphere,
                t.end_sphere,
                format_rational(&t.measure)
            );
        }
        println!("ledger total   = {}", format_rational(&ledger.ledger_total));
        println!(
            "annulus        = {}",
            format_rational(&ledger.annulus_measure)
        );
        println!(
            "invariant sum  = {}",
            format_rational(&ledger.invariant_total)
        );
        println!("balanced: {balanced}");
    }
    Ok(if balanced {
        Outcome::Positive
    } else {
        Outcome::Negative
    })
}

fn cmd_verify(file: &str) -> Result<Outcome> {
    let text = if file == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Error::Invalid(e.to_string()))?;
        s
    } else {
        std::fs::read_to_string(file).map_err(|e| Error::Invalid(format!("{file}: {e}")))?
    };
    let doc = Document::from_json(&text)?;
    match verify_document(&doc) {
        Ok(()) => {
            println!("verified");
            Ok(Outcome::Positive)
        }
        Err(e) => {
            println!("rejected: {e}");
            Ok(Outcome::Negative)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let usage = e.use_stderr();
            let _ = e.print();
            // usage errors are input errors; --help and --version succeed
            return ExitCode::from(if usage { 1 } else { 0 });
        }
    };
    let result = match cli.command {
        Command::Order {
            matrix,
            eigenvalues,
            common,
        } => cmd_order(matrix, eigenvalues, &common),
        Command::Witness {
            poly,
            selector,
            common,
        } => cmd_witness(&poly, selector, &common),
        Command::Integrate {
            prime,
            density,
            root_index,
            depth,
            nvars,
            center,
            region_depth,
            common,
        } => cmd_integrate(
            prime,
            &density,
            root_index,
            depth,
            nvars,
            center,
            region_depth,
            &common,
        ),
        Command::Measure {
            prime,
            center,
            region_depth,
            map,
            source_dim,
            density,
            root_index,
            depth,
            common,
        } => cmd_measure(
            prime,
            &center,
            region_depth,
            map,
            source_dim,
            density,
            root_index,
            depth,
            &common,
        ),
        Command::Tile {
            prime,
            scale,
            range,
            common,
        } => cmd_tile(prime, scale, range, &common),
        Command::Verify { file, .. } => cmd_verify(&file),
    };
    match result {
        Ok(Outcome::Positive) => ExitCode::from(0),
        Ok(Outcome::Negative) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
