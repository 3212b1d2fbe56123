use clap::{Parser, Subcommand};
use serde_json::{json, Value};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use modgb::cones::{
    decompose_normal_forms, exact, lift_to_d_standard, macaulay_constants,
    pure_power_decomposition, ConeDecomposition, SplitPolicy, DEFAULT_LAYER_LIMIT,
};
use modgb::groebner::{initial_module, reduced_groebner_basis, MonomialSubmodule};
use modgb::hilbert::{hf_enumerate, hp_and_regularity, hs_from_cones};
use modgb::structure::{fitting0, module_dimension, presentation};
use modgb::verify::{
    random_corpus, verify_instance, CheckStatus, CorpusOptions, InstanceReport, VerifyOptions,
    VerifyReport,
};
use modgb::{Error, FieldSpec, ProblemFile};

#[derive(Parser)]
#[command(name = "modgb")]
#[command(about = "Gröbner bases of free-module submodules: cone decompositions, Macaulay constants, and degree bounds")]
#[command(version)]
struct Cli {
    /// Emit a machine-readable JSON record instead of tables
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Commands,
}

#[derive(Subcommand)]
enum Commands {
    /// Reduced Gröbner basis of the input module
    Gb { file: PathBuf },

    /// Cone decomposition of the normal forms of the input module
    Decompose { file: PathBuf },

    /// Macaulay constants of the exact decomposition (and the pure-power
    /// route when the initial module is a pure-power module)
    Macaulay { file: PathBuf },

    /// Hilbert series, Hilbert polynomial, regularity, and dimension
    Hilbert {
        file: PathBuf,
        /// Cap for the enumeration cross-check table
        #[arg(long)]
        zmax: Option<u64>,
    },

    /// Presentation matrix and zeroth Fitting ideal
    Fitting { file: PathBuf },

    /// All applicable degree bounds next to the actual reduced basis degree
    Bounds { file: PathBuf },

    /// Run every consistency and bound check on files or on a seeded corpus
    Verify {
        /// Problem files; when empty, a random corpus is generated
        files: Vec<PathBuf>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Number of random corpus instances
        #[arg(long, default_value_t = 25)]
        count: usize,
        #[arg(long, default_value_t = 3)]
        nmax: usize,
        #[arg(long, default_value_t = 2)]
        mmax: usize,
        #[arg(long, default_value_t = 3)]
        dmax: u64,
        /// Coefficient field for the corpus: QQ or a prime modulus
        #[arg(long, default_value = "32003")]
        field: String,
        /// Cap on enumeration degrees
        #[arg(long)]
        zmax: Option<u64>,
        /// Draw only graded instances
        #[arg(long, default_value_t = false)]
        graded_only: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::LimitExceeded(_) => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}

fn load(path: &Path) -> Result<ProblemFile, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
    let problem = modgb::parse(&text)?;
    for w in problem.module.spec.warnings() {
        eprintln!("warning: {w}");
    }
    Ok(problem)
}

fn emit(cli: &Cli, human: String, value: Value) {
    if cli.json {
        println!("{}", serde_json::to_string_pretty(&value).expect("serializable"));
    } else {
        print!("{human}");
    }
}

fn run(cli: &Cli) -> Result<ExitCode, Error> {
    match &cli.command {
        Commands::Gb { file } => cmd_gb(cli, file),
        Commands::Decompose { file } => cmd_decompose(cli, file),
        Commands::Macaulay { file } => cmd_macaulay(cli, file),
        Commands::Hilbert { file, zmax } => cmd_hilbert(cli, file, *zmax),
        Commands::Fitting { file } => cmd_fitting(cli, file),
        Commands::Bounds { file } => cmd_bounds(cli, file),
        Commands::Verify {
            files,
            seed,
            count,
            nmax,
            mmax,
            dmax,
            field,
            zmax,
            graded_only,
        } => cmd_verify(
            cli,
            files,
            *seed,
            *count,
            *nmax,
            *mmax,
            *dmax,
            field,
            *zmax,
            *graded_only,
        ),
    }
}

fn cmd_gb(cli: &Cli, file: &Path) -> Result<ExitCode, Error> {
    let p = load(file)?;
    let fm = &p.module;
    let gb = reduced_groebner_basis(fm, &p.gens);
    let elems: Vec<String> = gb.elements.iter().map(|g| fm.format_element(g)).collect();
    let degree = gb.max_degree(fm);
    let mut human = String::new();
    human.push_str(&format!("reduced Gröbner basis ({} elements):\n", elems.len()));
    for e in &elems {
        human.push_str(&format!("  {e}\n"));
    }
    human.push_str(&format!("degree: {}\n", opt_u64(degree)));
    emit(
        cli,
        human,
        json!({
            "schema": 1,
            "command": "gb",
            "file": file.display().to_string(),
            "elements": elems,
            "degree": degree,
        }),
    );
    Ok(ExitCode::SUCCESS)
}

fn decomposition_json(p: &ProblemFile, dec: &ConeDecomposition) -> Value {
    let spec = &p.module.spec;
    let cones: Vec<Value> = dec
        .cones
        .iter()
        .map(|c| {
            json!({
                "pivot": p.module.format_element(&p.module.monomial_elem(c.pivot.clone())),
                "vars": c.vars.iter().map(|&v| spec.vars()[v].clone()).collect::<Vec<_>>(),
                "degree": c.degree(spec),
                "dim": c.dim(),
            })
        })
        .collect();
    json!({
        "q": dec.q,
        "degree": dec.degree(spec),
        "cones": cones,
    })
}

fn cmd_decompose(cli: &Cli, file: &Path) -> Result<ExitCode, Error> {
    let p = load(file)?;
    let fm = &p.module;
    let gb = reduced_groebner_basis(fm, &p.gens);
    let init = initial_module(fm, &gb);
    if init.is_full() {
        return Err(Error::FullModule);
    }
    let q = decompose_normal_forms(&fm.spec, &init, SplitPolicy::AscendingVars)?;
    let mut human = String::new();
    human.push_str(&format!(
        "{}-standard cone decomposition of the normal forms, {} cones, degree {}:\n",
        q.q,
        q.len(),
        opt_u64(q.degree(&fm.spec))
    ));
    human.push_str("  pivot                 vars            degree  dim\n");
    for c in &q.cones {
        let pivot = fm.format_element(&fm.monomial_elem(c.pivot.clone()));
        let vars: Vec<&str> = c.vars.iter().map(|&v| fm.spec.vars()[v].as_str()).collect();
        human.push_str(&format!(
            "  {:<20}  {:<14}  {:>6}  {:>3}\n",
            pivot,
            format!("{{{}}}", vars.join(",")),
            c.degree(&fm.spec),
            c.dim()
        ));
    }
    emit(
        cli,
        human,
        json!({
            "schema": 1,
            "command": "decompose",
            "file": file.display().to_string(),
            "decomposition": decomposition_json(&p, &q),
        }),
    );
    Ok(ExitCode::SUCCESS)
}

/// When every position of in(M) is cut out by the same pure powers
/// x_i^{d_i} (distinct variables), return the d_i.
fn detect_pure_power(msub: &MonomialSubmodule, nvars: usize) -> Option<Vec<u64>> {
    let mut shape: Option<Vec<(usize, u32)>> = None;
    for pos in 0..msub.rank() {
        let mut pairs = Vec::new();
        for g in msub.generators_at(pos) {
            let support: Vec<usize> = g.support().collect();
            if support.len() != 1 {
                return None;
            }
            pairs.push((support[0], g.exp(support[0])));
        }
        pairs.sort_unstable();
        if pairs.iter().zip(pairs.iter().skip(1)).any(|(a, b)| a.0 == b.0) {
            return None;
        }
        match &shape {
            None => shape = Some(pairs),
            Some(s) if *s == pairs => {}
            _ => return None,
        }
    }
    let shape = shape?;
    if shape.is_empty() || shape.len() > nvars {
        return None;
    }
    Some(shape.into_iter().map(|(_, e)| e as u64).collect())
}

fn cmd_macaulay(cli: &Cli, file: &Path) -> Result<ExitCode, Error> {
    let p = load(file)?;
    let fm = &p.module;
    let spec = &fm.spec;
    let gb = reduced_groebner_basis(fm, &p.gens);
    let init = initial_module(fm, &gb);
    if init.is_full() {
        return Err(Error::FullModule);
    }
    let q = decompose_normal_forms(spec, &init, SplitPolicy::AscendingVars)?;
    let pexact = exact(spec, &q)?;
    let direct = macaulay_constants(spec, &pexact)?;

    let mut human = format!(
        "Macaulay constants (direct route, q = {}): b = {:?}\n",
        direct.q, direct.b
    );
    let mut record = json!({
        "schema": 1,
        "command": "macaulay",
        "file": file.display().to_string(),
        "direct": { "q": direct.q, "b": direct.b },
    });

    if let Some(d) = detect_pure_power(&init, spec.nvars()) {
        let l = spec.max_basis_degree();
        let dgen = d.iter().max().copied().unwrap_or(0) + l;
        let big_d = 2u64.max(dgen);
        let (pp, cpp) = pure_power_decomposition(spec, &d, big_d, DEFAULT_LAYER_LIMIT)?;
        // the same constants through the generic route, lifted to the same q
        let lifted = lift_to_d_standard(spec, &q, q.q, big_d)?;
        let relif = ConeDecomposition::new(lifted.cones, big_d);
        let via_exact = macaulay_constants(spec, &exact(spec, &relif)?)?;
        let agree = via_exact.b == cpp.b;
        human.push_str(&format!(
            "pure-power module detected: d = {:?}, D = {}\n\
             constants (layered construction): b = {:?}\n\
             constants (lift + EXACT at q = D): b = {:?}  agreement: {}\n\
             cones in the layered decomposition: {}\n",
            d,
            big_d,
            cpp.b,
            via_exact.b,
            if agree { "yes" } else { "NO" },
            pp.len(),
        ));
        record["pure_power"] = json!({
            "d": d,
            "D": big_d,
            "b": cpp.b,
            "b_via_exact": via_exact.b,
            "agree": agree,
        });
        if !agree {
            emit(cli, human, record);
            return Ok(ExitCode::from(1));
        }
    }
    emit(cli, human, record);
    Ok(ExitCode::SUCCESS)
}

fn cmd_hilbert(cli: &Cli, file: &Path, zmax: Option<u64>) -> Result<ExitCode, Error> {
    let p = load(file)?;
    let fm = &p.module;
    let spec = &fm.spec;
    let gb = reduced_groebner_basis(fm, &p.gens);
    let init = initial_module(fm, &gb);
    if init.is_full() {
        return Err(Error::FullModule);
    }
    let q = decompose_normal_forms(spec, &init, SplitPolicy::AscendingVars)?;
    let hs = hs_from_cones(spec, &q);
    let (hp, reg) = hp_and_regularity(&hs);
    let dim = modgb::hilbert::dimension(&hs)?;
    let top = zmax.unwrap_or(q.degree(spec).unwrap_or(0) + 3);

    let nums: Vec<String> = hs.numerator().iter().map(|c| c.to_string()).collect();
    let (rnum, rk) = hs.reduced();
    let mut human = format!(
        "Hilbert series: ({}) / (1-t)^{}\n reduced: ({}) / (1-t)^{}\n",
        nums.join(", "),
        hs.den_pow(),
        rnum.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", "),
        rk
    );
    human.push_str(&format!(
        "Hilbert polynomial coords in C(z+i,i): {:?}\nregularity: {reg}\ndimension r: {dim}\n",
        hp.coords().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
    ));
    human.push_str("  z   HF(z)   enumeration\n");
    let mut table = Vec::new();
    for z in 0..=top {
        let hf = hs.hf(z);
        let count = hf_enumerate(spec, &init, z);
        human.push_str(&format!("  {z:<3} {:<7} {count}\n", hf.to_string()));
        table.push(json!({"z": z, "hf": hf.to_string(), "enumeration": count}));
    }
    emit(
        cli,
        human,
        json!({
            "schema": 1,
            "command": "hilbert",
            "file": file.display().to_string(),
            "series_numerator": nums,
            "series_den_pow": hs.den_pow(),
            "reduced_numerator": rnum.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            "reduced_den_pow": rk,
            "hilbert_polynomial_coords": hp.coords().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            "regularity": reg,
            "dimension": dim,
            "values": table,
        }),
    );
    Ok(ExitCode::SUCCESS)
}

fn cmd_fitting(cli: &Cli, file: &Path) -> Result<ExitCode, Error> {
    let p = load(file)?;
    let fm = &p.module;
    let pm = presentation(fm, &p.gens);
    let gens = fitting0(&pm, fm.spec.nvars(), fm.spec.field(), true);
    let strs: Vec<String> = gens.iter().map(|g| g.format(fm.spec.vars())).collect();
    let degs: Vec<Option<u64>> = gens.iter().map(|g| g.degree()).collect();
    let mut human = format!(
        "presentation matrix: {} rows x {} columns\nFitt_0 generators ({}):\n",
        pm.rows,
        pm.cols,
        strs.len()
    );
    for (s, d) in strs.iter().zip(&degs) {
        human.push_str(&format!("  [deg {}] {s}\n", opt_u64(*d)));
    }
    if strs.is_empty() {
        human.push_str("  (zero ideal)\n");
    }
    emit(
        cli,
        human,
        json!({
            "schema": 1,
            "command": "fitting",
            "file": file.display().to_string(),
            "rows": pm.rows,
            "cols": pm.cols,
            "generators": strs,
            "degrees": degs,
        }),
    );
    Ok(ExitCode::SUCCESS)
}

fn cmd_bounds(cli: &Cli, file: &Path) -> Result<ExitCode, Error> {
    let p = load(file)?;
    let fm = &p.module;
    let gens: Vec<_> = p.gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    let graded = gens.iter().all(|g| fm.is_homogeneous(g));
    let gb = reduced_groebner_basis(fm, &gens);
    let deg = gb.max_degree(fm);
    let init = initial_module(fm, &gb);
    if init.is_full() {
        return Err(Error::FullModule);
    }
    let r = module_dimension(fm, &gens)?;
    let pm = presentation(fm, &gens);
    let fitting = fitting0(&pm, fm.spec.nvars(), fm.spec.field(), true);
    let fitting_degrees: Vec<u64> = fitting.iter().filter_map(|g| g.degree()).collect();
    let mut gd: Vec<u64> = gens.iter().filter_map(|g| fm.degree(g)).collect();
    gd.sort_unstable_by(|a, b| b.cmp(a));
    let l = fm.spec.max_basis_degree();
    let inputs = modgb::bounds::BoundInputs {
        n: fm.spec.nvars(),
        m: fm.spec.rank(),
        r,
        dmax: gd.first().copied().unwrap_or(0).max(l),
        gen_degrees: gd,
        l,
        basis_degree_sum: fm.spec.basis_degrees().iter().sum(),
        fitting_degrees: if fitting_degrees.is_empty() {
            None
        } else {
            Some(fitting_degrees)
        },
    };
    let report = modgb::bounds::BoundReport::assemble(&inputs, graded, deg)?;
    let violations = report.violations();

    let mut human = format!(
        "graded: {graded}   n = {}, m = {}, r = {r}, D = {}, l = {l}\nactual reduced basis degree: {}\n",
        inputs.n,
        inputs.m,
        inputs.dmax,
        opt_u64(deg)
    );
    human.push_str(&format!("{:<34} {:>24}  note\n", "bound", "value"));
    for (name, entry) in &report.bounds {
        human.push_str(&format!(
            "{:<34} {:>24}  {}\n",
            name,
            entry.value.clone().unwrap_or_else(|| "n/a".into()),
            entry.note
        ));
    }
    if !violations.is_empty() {
        human.push_str(&format!("VIOLATED: {violations:?}\n"));
    }
    emit(
        cli,
        human,
        json!({
            "schema": 1,
            "command": "bounds",
            "file": file.display().to_string(),
            "report": report,
            "violations": violations,
        }),
    );
    Ok(if violations.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

#[allow(clippy::too_many_arguments)]
fn cmd_verify(
    cli: &Cli,
    files: &[PathBuf],
    seed: u64,
    count: usize,
    nmax: usize,
    mmax: usize,
    dmax: u64,
    field: &str,
    zmax: Option<u64>,
    graded_only: bool,
) -> Result<ExitCode, Error> {
    let field = parse_field(field)?;
    let opts = VerifyOptions {
        zmax_extra: 3,
        zmax_cap: zmax,
        seed,
    };
    let mut instances: Vec<InstanceReport> = Vec::new();
    if files.is_empty() {
        let corpus = random_corpus(&CorpusOptions {
            seed,
            count,
            nmax,
            mmax,
            dmax,
            field,
            graded_only,
        });
        for (name, problem) in &corpus {
            instances.push(verify_instance(name, problem, &opts)?);
        }
    } else {
        for f in files {
            let problem = load(f)?;
            instances.push(verify_instance(&f.display().to_string(), &problem, &opts)?);
        }
    }
    let report = VerifyReport::from_instances(Some(seed), instances);

    let mut human = String::new();
    for inst in &report.instances {
        let status = if inst.failed() {
            "FAIL"
        } else if inst.skipped() {
            "pass (with skips)"
        } else {
            "pass"
        };
        human.push_str(&format!(
            "[{status}] {} graded={} n={} m={} r={} degG={} checks={}\n",
            inst.name,
            inst.graded,
            inst.n,
            inst.m,
            inst.r,
            opt_u64(inst.reduced_gb_degree),
            inst.checks.len(),
        ));
        for c in &inst.checks {
            match c.status {
                CheckStatus::Fail => {
                    human.push_str(&format!("    FAIL {}: {}\n", c.name, c.detail))
                }
                CheckStatus::Skip => {
                    human.push_str(&format!("    skip {}: {}\n", c.name, c.detail))
                }
                CheckStatus::Pass => {}
            }
        }
    }
    human.push_str(&format!(
        "verified {} instances: {} passed, {} failed, {} skipped\n",
        report.instances.len(),
        report.passed,
        report.failed,
        report.skipped
    ));
    emit(
        cli,
        human,
        serde_json::to_value(&report).expect("report serializes"),
    );
    Ok(if report.failed > 0 {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    })
}

fn parse_field(text: &str) -> Result<FieldSpec, Error> {
    if text.eq_ignore_ascii_case("qq") {
        return Ok(FieldSpec::Rationals);
    }
    let digits = text.trim_start_matches("GF").trim_start_matches("gf").trim();
    let p: u64 = digits
        .parse()
        .map_err(|_| Error::InvalidInput(format!("field must be QQ or a prime, got '{text}'")))?;
    let f = FieldSpec::Prime(p);
    f.validate()?;
    Ok(f)
}

fn opt_u64(v: Option<u64>) -> String {
    match v {
        Some(d) => d.to_string(),
        None => "undefined".to_string(),
    }
}
