use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::{BigInt, BigUint};

use srknot::corpus::{load_corpus, table1, verify_corpus};
use srknot::invariants::{delta2, knot_det, symmetry_check};
use srknot::laurent::LaurentPoly;
use srknot::numtheory::{
    admissible_pair, catalan_scan, det_constraint, gcd_structure, lemma33_scan, lemma34_scan,
    lemma36_family, lemma36_scan, prime_factor_set, prop34_scan,
};
use srknot::seifert::{
    alexander_from_fusion, alexander_from_seifert, case_formulas, closed_form_p, closed_form_q,
    det_p_minus_tqt, det_q_minus_tpt, parse_int_matrix, FusionSigns, SeifertMatrix,
};
use srknot::srpoly::{product_formula, F_factor, SRDecomposition, SRParams};
use srknot::srsearch::{classify, decompose, lemma13_enumerate, lemma13_form_of, SRClassification};
use srknot::Error;

#[derive(Parser)]
#[command(
    name = "srknot",
    version,
    about = "Alexander polynomials of simple-ribbon knots"
)]
struct Cli {
    /// Cap on worker threads used by scans and table replay.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Laurent polynomial utilities.
    #[command(subcommand)]
    Poly(PolyCmd),
    /// Simple-ribbon factors and the decomposition search.
    #[command(subcommand)]
    Sr(SrCmd),
    /// Invariants of a knot given by its Alexander polynomial.
    #[command(subcommand)]
    Knot(KnotCmd),
    /// Seifert matrix determinants.
    #[command(subcommand)]
    Seifert(SeifertCmd),
    /// Number-theoretic scans.
    #[command(subcommand)]
    Nt(NtCmd),
    /// The bundled knot table.
    #[command(subcommand)]
    Table(TableCmd),
}

#[derive(Args)]
struct PolyArg {
    /// Polynomial such as "2 - 5*t + 2*t^2".
    #[arg(long, allow_hyphen_values = true)]
    poly: String,
}

#[derive(Args)]
struct ParamArgs {
    #[arg(long)]
    m: u32,
    #[arg(long, allow_hyphen_values = true)]
    l: i64,
    #[arg(long)]
    p: u32,
}

#[derive(Subcommand)]
enum PolyCmd {
    /// Exact value at an integer.
    Eval {
        #[command(flatten)]
        poly: PolyArg,
        #[arg(long, allow_hyphen_values = true)]
        at: BigInt,
    },
    /// Representative with lowest exponent 0 and positive constant term.
    Normalize(PolyArg),
}

#[derive(Subcommand)]
enum SrCmd {
    /// F(t; m, l, p) in normal form.
    Factor(ParamArgs),
    /// Product of factors such as "F(1,1,1)*F(2,0,2)".
    Product {
        #[arg(long)]
        factors: String,
        /// Alexander polynomial of the base knot.
        #[arg(long, allow_hyphen_values = true, default_value = "1")]
        base: String,
    },
    /// Obstructions followed by the exhaustive factor search.
    Classify(PolyArg),
    /// Every factor multiset whose product is the polynomial.
    Decompose(PolyArg),
    /// Factors with delta2 = 1 and the shape of g*h.
    Lemma13 {
        #[arg(long, default_value_t = 6)]
        max_m: u32,
        #[arg(long, default_value_t = 6)]
        max_l: i64,
    },
}

#[derive(Subcommand)]
enum KnotCmd {
    /// delta2, determinant and reciprocity.
    Invariants(PolyArg),
}

#[derive(Subcommand)]
enum SeifertCmd {
    /// Compare the block determinants with their closed forms.
    Check {
        #[arg(long)]
        m: u32,
        #[arg(long, allow_hyphen_values = true)]
        l: i64,
        /// Band signs, e.g. "+1,-1".
        #[arg(long, allow_hyphen_values = true)]
        eps: String,
    },
    /// det(M - tMᵀ) for an integer matrix written "a,b;c,d".
    Alexander {
        #[arg(long, allow_hyphen_values = true)]
        matrix: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Lemma {
    #[value(name = "32")]
    Catalan,
    #[value(name = "33")]
    Lemma33,
    #[value(name = "34")]
    Lemma34,
    #[value(name = "36")]
    Lemma36,
    #[value(name = "prop34")]
    Prop34,
}

#[derive(Subcommand)]
enum NtCmd {
    /// Whether K_m and K_n may intersect.
    Pairs {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        n: u32,
    },
    /// Bounded search for solutions of an exponential equation.
    Scan {
        #[arg(long, value_enum)]
        lemma: Lemma,
        /// Comma-separated bounds: 32: x,y,u,v; 33/34/prop34: A,exp; 36: M,exp.
        #[arg(long)]
        bounds: Option<String>,
    },
    /// Distinct prime factors.
    Factor {
        #[arg(long)]
        n: BigUint,
    },
    /// gcd(A^m + 1, A^n ± 1).
    Gcd {
        #[arg(long)]
        a: u64,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        minus: bool,
    },
    /// Exponents (a, b) with det = (2^m - 1)^a (2^m + 1)^b.
    Det {
        #[arg(long)]
        det: BigUint,
        #[arg(long)]
        m: u32,
    },
}

#[derive(Subcommand)]
enum TableCmd {
    /// Recompute every column of the table.
    Verify {
        /// Corpus file; defaults to the bundled table.
        #[arg(long)]
        corpus: Option<PathBuf>,
    },
}

type CmdResult = Result<(Vec<String>, bool), Error>;

fn parse_poly(text: &str) -> Result<LaurentPoly, Error> {
    text.parse()
}

fn run(cmd: Command) -> CmdResult {
    let mut out = Vec::new();
    let mut ok = true;
    match cmd {
        Command::Poly(PolyCmd::Eval { poly, at }) => {
            let v = parse_poly(&poly.poly)?.eval(&at)?;
            out.push(if v.is_integer() {
                v.to_integer().to_string()
            } else {
                v.to_string()
            });
        }
        Command::Poly(PolyCmd::Normalize(p)) => {
            out.push(parse_poly(&p.poly)?.normalize()?.to_string());
        }
        Command::Sr(SrCmd::Factor(a)) => {
            out.push(F_factor(SRParams::new(a.m, a.l, a.p)?).to_string());
        }
        Command::Sr(SrCmd::Product { factors, base }) => {
            let d: SRDecomposition = factors.parse()?;
            out.push(product_formula(&parse_poly(&base)?, &d)?.to_string());
        }
        Command::Sr(SrCmd::Classify(p)) => match classify(&parse_poly(&p.poly)?.normalize()?) {
            SRClassification::NotSr(o) => out.push(format!("NOT_SR obstruction={o}")),
            SRClassification::PolyCompatible(ds) => {
                out.push(format!("POLY_COMPATIBLE certificates={}", ds.len()));
                out.extend(ds.iter().map(|d| format!("certificate={d}")));
            }
        },
        Command::Sr(SrCmd::Decompose(p)) => {
            let ds = decompose(&parse_poly(&p.poly)?.normalize()?);
            out.push(format!("decompositions={}", ds.len()));
            out.extend(ds.iter().map(|d| format!("decomposition={d}")));
        }
        Command::Sr(SrCmd::Lemma13 { max_m, max_l }) => {
            for (x, gh) in lemma13_enumerate(max_m, max_l) {
                let form = format!("{:?}", lemma13_form_of(&gh)).to_lowercase();
                out.push(format!("params={x} gh=\"{gh}\" form={form}"));
            }
        }
        Command::Knot(KnotCmd::Invariants(p)) => {
            let dp = parse_poly(&p.poly)?.normalize()?;
            out.push(format!(
                "delta2={} det={} symmetric={}",
                delta2(&dp),
                knot_det(&dp),
                symmetry_check(&dp)
            ));
        }
        Command::Seifert(SeifertCmd::Check { m, l, eps }) => {
            let eps = FusionSigns::parse_eps(&eps)?;
            if eps.len() != m as usize {
                return Err(Error::InvalidSigns(format!(
                    "--m {m} needs {m} band signs, got {}",
                    eps.len()
                )));
            }
            let signs = FusionSigns::new(eps, l)?;
            let dp = det_p_minus_tqt(&signs);
            let dq = det_q_minus_tpt(&signs);
            let cp = closed_form_p(&signs);
            let cq = closed_form_q(&signs);
            let (kp, kq) = case_formulas(signs.params());
            let agree = dp == cp && dq == cq && dp == kp && dq == kq;
            out.push(format!("params={}", signs.params()));
            out.push(format!("det_p_minus_tqt={dp}"));
            out.push(format!("det_q_minus_tpt={dq}"));
            out.push(format!("closed_form_p={cp}"));
            out.push(format!("closed_form_q={cq}"));
            out.push(format!("case_formula_p={kp}"));
            out.push(format!("case_formula_q={kq}"));
            out.push(format!(
                "alexander={}",
                alexander_from_fusion(&LaurentPoly::one(), &signs)?
            ));
            out.push(format!("agree={agree}"));
            ok = agree;
        }
        Command::Seifert(SeifertCmd::Alexander { matrix }) => {
            let m = SeifertMatrix::new(parse_int_matrix(&matrix)?)?;
            out.push(alexander_from_seifert(&m)?.to_string());
        }
        Command::Nt(NtCmd::Pairs { m, n }) => out.push(admissible_pair(m, n)?.to_string()),
        Command::Nt(NtCmd::Scan { lemma, bounds }) => out = scan(lemma, bounds.as_deref())?,
        Command::Nt(NtCmd::Factor { n }) => out.push(prime_factor_set(&n)?.to_string()),
        Command::Nt(NtCmd::Gcd { a, m, n, minus }) => {
            out.push(gcd_structure(a, m, n, minus)?.to_string())
        }
        Command::Nt(NtCmd::Det { det, m }) => out.push(match det_constraint(&det, m) {
            Some((a, b)) => format!("a={a} b={b}"),
            None => "none".to_string(),
        }),
        Command::Table(TableCmd::Verify { corpus }) => {
            let records = match corpus {
                Some(path) => load_corpus(path)?,
                None => table1(),
            };
            let reports = verify_corpus(&records);
            let passed = reports.iter().filter(|r| r.passed()).count();
            out.extend(reports.iter().map(|r| r.to_string()));
            out.push(format!(
                "rows={} passed={} failed={}",
                reports.len(),
                passed,
                reports.len() - passed
            ));
            ok = passed == reports.len();
        }
    }
    Ok((out, ok))
}

fn bounds_or(text: Option<&str>, default: &[u64]) -> Result<Vec<u64>, Error> {
    let Some(text) = text else {
        return Ok(default.to_vec());
    };
    let v: Vec<u64> = text
        .split(',')
        .map(|s| {
            s.trim()
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("bad bound `{s}`")))
        })
        .collect::<Result<_, _>>()?;
    if v.len() != default.len() {
        return Err(Error::InvalidArgument(format!(
            "expected {} bounds, got {}",
            default.len(),
            v.len()
        )));
    }
    Ok(v)
}

fn exp_bound(x: u64) -> Result<u32, Error> {
    u32::try_from(x).map_err(|_| Error::InvalidArgument(format!("exponent bound {x} too large")))
}

fn scan(lemma: Lemma, bounds: Option<&str>) -> Result<Vec<String>, Error> {
    let mut out = Vec::new();
    match lemma {
        Lemma::Catalan => {
            let b = bounds_or(bounds, &[100, 100, 7, 7])?;
            let hits = catalan_scan(b[0], b[1], exp_bound(b[2])?, exp_bound(b[3])?);
            out.extend(hits.iter().map(|h| h.to_string()));
        }
        Lemma::Lemma33 => {
            let b = bounds_or(bounds, &[50, 12])?;
            out.extend(
                lemma33_scan(b[0], exp_bound(b[1])?)
                    .iter()
                    .map(|h| h.to_string()),
            );
        }
        Lemma::Lemma34 => {
            let b = bounds_or(bounds, &[50, 12])?;
            let (p1, p2) = lemma34_scan(b[0], exp_bound(b[1])?);
            out.extend(p1.iter().map(|h| format!("part=1 A={} p={}", h.a, h.m)));
            out.extend(p2.iter().map(|h| format!("part=2 A={} q={}", h.a, h.m)));
        }
        Lemma::Prop34 => {
            let b = bounds_or(bounds, &[50, 12])?;
            let (p1, p2) = prop34_scan(b[0], exp_bound(b[1])?);
            out.extend(p1.iter().map(|h| format!("part=1 {h}")));
            out.extend(p2.iter().map(|h| format!("part=2 {h}")));
        }
        Lemma::Lemma36 => {
            let b = bounds_or(bounds, &[20, 8])?;
            let scan = lemma36_scan(exp_bound(b[0])?, exp_bound(b[1])?);
            for (i, hits) in scan.shapes.iter().enumerate() {
                for h in hits {
                    out.push(format!(
                        "shape={} {h} in_family={}",
                        i + 1,
                        lemma36_family(i + 1, h)
                    ));
                }
            }
        }
    }
    out.push(format!("hits={}", out.len()));
    Ok(out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli.command) {
        Ok((lines, ok)) => {
            for l in lines {
                println!("{l}");
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
