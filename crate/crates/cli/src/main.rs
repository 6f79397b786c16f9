mod verify;

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use yoshida_core::arith::{is_prime, prime_divisors};
use yoshida_core::brandt::{brandt_matrix, eigenforms, AutomorphicForm};
use yoshida_core::fixture;
use yoshida_core::harmonic::{harm_basis, Frame, HarmSpace};
use yoshida_core::io::{
    eigenvalue_doc, from_json, parse_document, print_document, to_json, AlgebraDoc, Document, ExpansionDoc, FormDoc,
    LatticeDoc, LatticeKind,
};
use yoshida_core::linalg::Matrix;
use yoshida_core::quat::{class_set, ClassSet, LatticeOrder, QuaternionAlgebra};
use yoshida_core::siegel::lfunc::{rankin_selberg_series_check, shift_rankin_selberg};
use yoshida_core::siegel::{
    eigenvalue_extract, hecke_tp, lambda_n, rankin_selberg_local, standard_l_local, zeta_factor,
    FourierExpansionSiegel2, SatakePair,
};
use yoshida_core::yoshida::{lift_from_polynomials, yoshida2, IntGram};
use yoshida_core::Rational;

#[derive(Parser)]
#[command(
    name = "yoshida",
    version,
    about = "Quaternionic modular forms and degree-2 Yoshida lifts"
)]
struct Cli {
    /// Worker threads for parallel enumeration (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Source {
    /// Bundled example to use instead of files.
    #[arg(long, value_parser = ["n17"])]
    fixture: Option<String>,
    /// Algebra JSON file.
    #[arg(long)]
    algebra: Option<PathBuf>,
    /// Order JSON file; its `algebra_ref` is resolved next to it unless
    /// `--algebra` is given.
    #[arg(long)]
    order: Option<PathBuf>,
    /// Prime used to search for ideal classes (default: smallest prime not
    /// dividing the discriminant).
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Ideal classes of an order.
    Classset {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Brandt matrix B(p) on forms of degree ν.
    Brandt {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 0)]
        nu: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Simultaneous eigenspaces of the Brandt matrices and involutions.
    Eigenforms {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 0)]
        nu: u32,
        #[arg(long, value_delimiter = ',', default_values_t = vec![2u64, 3, 5])]
        primes: Vec<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Degree-2 lift as a Fourier expansion.
    Lift {
        #[command(flatten)]
        source: Source,
        /// Discriminant bound 4ac − b².
        #[arg(long, default_value_t = 120)]
        bound: i64,
        /// First form (degree ν₁); defaults to the bundled φ₁.
        #[arg(long)]
        phi1: Option<PathBuf>,
        /// Second form (degree 0); defaults to the bundled φ₂.
        #[arg(long)]
        phi2: Option<PathBuf>,
        /// Use lift polynomials built from the forms even for the bundled
        /// example.
        #[arg(long)]
        from_forms: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Hecke operator T(p) on an expansion file.
    Hecke {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Local L-factors at p from Hecke eigenvalues of f (weight k₁) and g
    /// (weight k₂).
    Lfactor {
        #[arg(long)]
        p: u64,
        #[arg(long, allow_hyphen_values = true)]
        af: i64,
        #[arg(long, allow_hyphen_values = true)]
        ag: i64,
        #[arg(long, default_value_t = 4)]
        k1: u32,
        #[arg(long, default_value_t = 2)]
        k2: u32,
        /// Degree of the standard L-function.
        #[arg(long, default_value_t = 2)]
        n: u32,
        /// Evaluation point.
        #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
        s: f64,
        /// Level for Λ_N.
        #[arg(long, default_value_t = 1)]
        level: u64,
    },
    /// Run the bundled level-17 example end to end.
    VerifyExample {
        /// Discriminant bound of the expansion fed to T(p).
        #[arg(long, default_value_t = 900)]
        bound: i64,
    },
    /// Parse a document and print it back.
    Roundtrip {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .expect("thread pool");
    }
    match run(cli.command) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            std::process::exit(2);
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn emit(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_algebra(path: &Path) -> Result<Arc<QuaternionAlgebra>> {
    let doc: AlgebraDoc = from_json(&read(path)?).with_context(|| format!("parsing {}", path.display()))?;
    Ok(Arc::new(doc.build().with_context(|| format!("in {}", path.display()))?))
}

fn load_lattice_doc(path: &Path) -> Result<LatticeDoc> {
    from_json(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn resolve_algebra(lattice_path: &Path, doc: &LatticeDoc, explicit: Option<&Path>) -> Result<Arc<QuaternionAlgebra>> {
    match explicit {
        Some(a) => load_algebra(a),
        None => {
            let dir = lattice_path.parent().unwrap_or(Path::new("."));
            load_algebra(&dir.join(&doc.algebra_ref))
        }
    }
}

fn seed_prime(order: &LatticeOrder) -> Result<u64> {
    let d = order.discriminant()?;
    Ok((2..).find(|&q| is_prime(q) && d % q != 0).expect("some prime"))
}

fn load_class_set(src: &Source) -> Result<ClassSet> {
    if src.fixture.is_some() {
        if src.algebra.is_some() || src.order.is_some() {
            bail!("--fixture cannot be combined with --algebra/--order");
        }
        return Ok(fixture::class_set());
    }
    let order_path = src
        .order
        .as_ref()
        .ok_or_else(|| anyhow!("either --fixture or --order is required"))?;
    let doc = load_lattice_doc(order_path)?;
    let alg = resolve_algebra(order_path, &doc, src.algebra.as_deref())?;
    let order = doc.order(alg).with_context(|| format!("in {}", order_path.display()))?;
    let seed = match src.seed {
        Some(p) => p,
        None => seed_prime(&order)?,
    };
    Ok(class_set(&order, seed)?)
}

fn harm_space(cs: &ClassSet, nu: u32) -> HarmSpace {
    let frame = Frame::trace_zero(cs.order().lattice().algebra().clone());
    harm_basis(nu, &frame)
}

fn matrix_json(m: &Matrix) -> Value {
    json!(m.row_vecs())
}

fn form_doc(f: &AutomorphicForm, hs: &HarmSpace) -> FormDoc {
    FormDoc {
        nu: f.nu,
        values: f.polys(hs),
    }
}

fn load_form(path: &Path, hs: &HarmSpace) -> Result<AutomorphicForm> {
    let doc: FormDoc = from_json(&read(path)?).with_context(|| format!("parsing {}", path.display()))?;
    if doc.nu != hs.nu {
        bail!("{}: form has degree {}, expected {}", path.display(), doc.nu, hs.nu);
    }
    AutomorphicForm::from_polys(hs, &doc.values).with_context(|| format!("in {}", path.display()))
}

fn show_value(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.15}")
    } else {
        "pole".into()
    }
}

fn run(cmd: Command) -> Result<i32> {
    match cmd {
        Command::Classset { source, out } => {
            let cs = load_class_set(&source)?;
            let reps: Vec<Value> = cs
                .representatives()
                .iter()
                .map(|r| {
                    let d = LatticeDoc::from_lattice(&r.lattice().canonical(), "algebra.json", LatticeKind::Ideal);
                    json!({"basis": d.basis, "norm": r.norm(), "left_order_units": r.left_order().unit_count()})
                })
                .collect();
            let v = json!({
                "class_number": cs.len(),
                "type_number": cs.type_number()?,
                "unit_counts": cs.unit_counts(),
                "mass": cs.mass(),
                "discriminant": cs.order().discriminant()?,
                "representatives": reps,
            });
            emit(&to_json(&v), out.as_deref())?;
        }
        Command::Brandt { source, p, nu, out } => {
            let cs = load_class_set(&source)?;
            let hs = harm_space(&cs, nu);
            let b = brandt_matrix(&cs, &hs, p)?;
            let blocks: Vec<Vec<Value>> = b.blocks.iter().map(|r| r.iter().map(matrix_json).collect()).collect();
            let basis: Vec<String> = hs.basis.iter().map(|p| p.to_string()).collect();
            let v = json!({"p": p, "nu": nu, "harmonic_basis": basis, "blocks": blocks});
            emit(&to_json(&v), out.as_deref())?;
        }
        Command::Eigenforms {
            source,
            nu,
            primes,
            out,
        } => {
            let cs = load_class_set(&source)?;
            let hs = harm_space(&cs, nu);
            let comps = eigenforms(&cs, &hs, &primes)?;
            let list: Vec<Value> = comps
                .iter()
                .map(|c| {
                    let polys: BTreeMap<String, String> = c
                        .char_polys
                        .iter()
                        .map(|(p, (f, m))| {
                            (
                                p.to_string(),
                                if *m == 1 { f.to_string() } else { format!("({f})^{m}") },
                            )
                        })
                        .collect();
                    json!({
                        "dimension": c.dim(),
                        "basis": c.basis.iter().map(|f| form_doc(f, &hs)).collect::<Vec<_>>(),
                        "eigenvalues": eigenvalue_doc(&c.eigenvalues),
                        "involutions": eigenvalue_doc(&c.involutions),
                        "char_polys": polys,
                    })
                })
                .collect();
            emit(&to_json(&list), out.as_deref())?;
        }
        Command::Lift {
            source,
            bound,
            phi1,
            phi2,
            from_forms,
            out,
        } => {
            let f = lift(&source, bound, phi1.as_deref(), phi2.as_deref(), from_forms)?;
            emit(&to_json(&f.to_doc()), out.as_deref())?;
        }
        Command::Hecke { input, p, out } => {
            let doc: ExpansionDoc =
                from_json(&read(&input)?).with_context(|| format!("parsing {}", input.display()))?;
            let f = FourierExpansionSiegel2::from_doc(&doc).with_context(|| format!("in {}", input.display()))?;
            let g = hecke_tp(&f, p)?;
            emit(&to_json(&g.to_doc()), out.as_deref())?;
            match eigenvalue_extract(&f, &g) {
                Ok(l) => eprintln!("eigenvalue at {p}: {l}"),
                Err(e) => eprintln!("no eigenvalue at {p}: {e}"),
            }
        }
        Command::Lfactor {
            p,
            af,
            ag,
            k1,
            k2,
            n,
            s,
            level,
        } => {
            if !is_prime(p) {
                bail!("{p} is not prime");
            }
            let rs = rankin_selberg_local(af, ag, k1, k2, p);
            let shifted = shift_rankin_selberg(&rs, k1, k2)?;
            let beta = SatakePair::new(p, k1, Rational::from(af));
            let beta_t = SatakePair::new(p, k2, Rational::from(ag));
            let std = standard_l_local(&beta, &beta_t, n, p)?;
            println!("rankin-selberg      {rs}");
            println!("shifted             {shifted}");
            println!("zeta part           {}", zeta_factor(n, p)?);
            println!("standard            {std}");
            println!(
                "recursion check     {}",
                rankin_selberg_series_check(af, ag, k1, k2, p, 6)
            );
            println!("standard at s = {s}   {}", show_value(std.eval(s)));
            println!("shifted at s = {s}    {}", show_value(shifted.eval(s)));
            let primes = if level == 1 { Vec::new() } else { prime_divisors(level) };
            match lambda_n(&primes, n, s, None) {
                Ok(v) => println!("lambda_{level} at s = {s}  {}", show_value(v)),
                Err(e) => println!("lambda_{level} at s = {s}  {e}"),
            }
        }
        Command::VerifyExample { bound } => {
            let ok = verify::run(bound)?;
            return Ok(if ok { 0 } else { 1 });
        }
        Command::Roundtrip { input, out } => {
            let text = read(&input)?;
            let doc = parse_document(&text).with_context(|| format!("parsing {}", input.display()))?;
            if let Document::Lattice(l) = &doc {
                let alg = resolve_algebra(&input, l, None)?;
                match l.kind {
                    LatticeKind::Order => {
                        l.order(alg).with_context(|| format!("in {}", input.display()))?;
                    }
                    LatticeKind::Ideal => {
                        l.ideal(alg).with_context(|| format!("in {}", input.display()))?;
                    }
                }
            }
            if let Document::Algebra(a) = &doc {
                a.build().with_context(|| format!("in {}", input.display()))?;
            }
            emit(&print_document(&doc), out.as_deref())?;
        }
    }
    Ok(0)
}

fn lift(
    source: &Source,
    bound: i64,
    phi1: Option<&Path>,
    phi2: Option<&Path>,
    from_forms: bool,
) -> Result<FourierExpansionSiegel2> {
    let cs = load_class_set(source)?;
    let golden = fixture::golden();
    if source.fixture.is_some() && phi1.is_none() && phi2.is_none() && !from_forms {
        let parts = vec![
            (IntGram::new(fixture::r1().gram())?, golden.p1.clone()),
            (IntGram::new(fixture::i12().gram())?, golden.p12.clone()),
        ];
        return Ok(lift_from_polynomials(&parts, golden.weight, golden.level, bound)?);
    }
    let nu1 = match phi1 {
        Some(p) => from_json::<FormDoc>(&read(p)?)?.nu,
        None => golden.phi1.nu,
    };
    let hs1 = harm_space(&cs, nu1);
    let hs0 = harm_space(&cs, 0);
    let f1 = match phi1 {
        Some(p) => load_form(p, &hs1)?,
        None if source.fixture.is_some() => AutomorphicForm::from_polys(&hs1, &golden.phi1.values)?,
        None => bail!("--phi1 is required with --order"),
    };
    let f2 = match phi2 {
        Some(p) => load_form(p, &hs0)?,
        None if source.fixture.is_some() => AutomorphicForm::from_polys(&hs0, &golden.phi2.values)?,
        None => bail!("--phi2 is required with --order"),
    };
    Ok(yoshida2(&cs, &hs1, &f1, &f2, bound)?)
}
