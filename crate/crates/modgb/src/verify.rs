//! The end-to-end verification pipeline: for each problem instance it
//! computes the reduced Gröbner basis, the cone decompositions, Macaulay
//! constants, Fitting ideal, regular sequence, and every applicable degree
//! bound, then checks the inequalities and identities that are supposed to
//! hold. A failing check is a bug somewhere; the report says which.

use num_bigint::BigInt;
use serde::Serialize;

use crate::bounds::{BoundInputs, BoundReport};
use crate::cones::{
    decompose_normal_forms, exact, is_q_exact, is_q_standard, lift_to_d_standard,
    macaulay_constants, pure_power_constants, ConeDecomposition, MacaulayConstants, SplitPolicy,
    DEFAULT_LAYER_LIMIT,
};
use crate::error::Error;
use crate::field::FieldSpec;
use crate::format::ProblemFile;
use crate::groebner::{
    initial_module, is_groebner_basis, normal_form, reduce, reduced_groebner_basis,
    GroebnerBasis, MonomialSubmodule,
};
use crate::hilbert::{binomial_clamped, hf_enumerate, hp_and_regularity, hs_from_cones};
use crate::module::{FreeModule, ModuleElement, ModuleMonomial};
use crate::monomial::Monomial;
use crate::rng::Rng;
use crate::structure::{
    dehomogenize_all, find_regular_sequence, fitting0, homogenize, homogenized_module,
    module_dimension, poly_times_basis, presentation,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CheckStatus {
    Pass,
    Fail,
    Skip,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub status: CheckStatus,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct InstanceReport {
    pub name: String,
    pub graded: bool,
    pub n: usize,
    pub m: usize,
    pub r: usize,
    pub max_gen_degree: Option<u64>,
    pub max_basis_degree: u64,
    pub reduced_gb_degree: Option<u64>,
    pub reduced_gb_size: usize,
    pub decomposition_degree: Option<u64>,
    pub macaulay_constants: Vec<u64>,
    pub fitting_degrees: Vec<u64>,
    pub bounds: BoundReport,
    pub checks: Vec<CheckResult>,
}

impl InstanceReport {
    pub fn failed(&self) -> bool {
        self.checks.iter().any(|c| c.status == CheckStatus::Fail)
    }

    pub fn skipped(&self) -> bool {
        self.checks.iter().any(|c| c.status == CheckStatus::Skip)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub schema: u32,
    pub seed: Option<u64>,
    pub instances: Vec<InstanceReport>,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

impl VerifyReport {
    pub fn from_instances(seed: Option<u64>, instances: Vec<InstanceReport>) -> Self {
        let failed = instances.iter().filter(|i| i.failed()).count();
        let skipped = instances
            .iter()
            .filter(|i| !i.failed() && i.skipped())
            .count();
        let passed = instances.len() - failed - skipped;
        VerifyReport {
            schema: 1,
            seed,
            instances,
            passed,
            failed,
            skipped,
        }
    }
}

pub struct VerifyOptions {
    /// Extra degrees past deg(Q) for the enumeration cross-checks.
    pub zmax_extra: u64,
    /// Hard cap on any single enumeration degree.
    pub zmax_cap: Option<u64>,
    /// Seed for the regular-sequence randomization.
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            zmax_extra: 3,
            zmax_cap: None,
            seed: 1,
        }
    }
}

struct Checks(Vec<CheckResult>);

impl Checks {
    fn record(&mut self, name: &str, ok: bool, detail: String) {
        self.0.push(CheckResult {
            name: name.to_string(),
            status: if ok { CheckStatus::Pass } else { CheckStatus::Fail },
            detail,
        });
    }

    fn skip(&mut self, name: &str, detail: String) {
        self.0.push(CheckResult {
            name: name.to_string(),
            status: CheckStatus::Skip,
            detail,
        });
    }
}

fn cap(z: u64, opts: &VerifyOptions) -> u64 {
    match opts.zmax_cap {
        Some(c) => z.min(c),
        None => z,
    }
}

/// Run every check on one instance. Input errors (an improper submodule,
/// D < l) surface as `Err`; check failures land in the report.
pub fn verify_instance(
    name: &str,
    problem: &ProblemFile,
    opts: &VerifyOptions,
) -> Result<InstanceReport, Error> {
    let fm = &problem.module;
    let spec = &fm.spec;
    let n = spec.nvars();
    let m = spec.rank();
    let l = spec.max_basis_degree();
    let gens: Vec<ModuleElement> = problem.gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    let graded = gens.iter().all(|g| fm.is_homogeneous(g));
    let dmax = gens.iter().filter_map(|g| fm.degree(g)).max();

    let mut checks = Checks(Vec::new());

    // ---- reduced Gröbner basis of M (certified through homogenization
    // when the input is not graded)
    let gb = reduced_groebner_basis(fm, &gens);
    let deg_gb = gb.max_degree(fm);
    let init = initial_module(fm, &gb);
    if init.is_full() {
        return Err(Error::FullModule);
    }
    let r = module_dimension(fm, &gens)?;

    if !graded {
        nongraded_checks(fm, &gens, &gb, &mut checks)?;
    }

    // ---- cone decomposition of the normal forms
    let q_asc = decompose_normal_forms(spec, &init, SplitPolicy::AscendingVars)?;
    let q_desc = decompose_normal_forms(spec, &init, SplitPolicy::DescendingVars)?;
    let deg_q = q_asc.degree(spec);

    checks.record(
        "split_is_l_standard",
        is_q_standard(spec, &q_asc, q_asc.q) && is_q_standard(spec, &q_desc, q_desc.q),
        format!("q = {}", q_asc.q),
    );

    let zmax = cap(deg_q.unwrap_or(0) + opts.zmax_extra, opts);
    checks.record(
        "cone_disjoint_cover",
        disjoint_cover_of_complement(spec, &init, &q_asc, zmax),
        format!("checked degrees 0..={zmax}"),
    );

    // Hilbert series from cones vs direct enumeration
    let hs = hs_from_cones(spec, &q_asc);
    let zmax_hs = cap(deg_q.unwrap_or(0) + 5, opts);
    let hs_ok = (0..=zmax_hs).all(|z| hs.hf(z) == BigInt::from(hf_enumerate(spec, &init, z)));
    checks.record(
        "hilbert_series_matches_enumeration",
        hs_ok,
        format!("z <= {zmax_hs}"),
    );

    // degree bound from the decomposition (graded statement; the homogenized
    // module covers the rest)
    if graded {
        let bound = deg_q.map(|d| (d + 1).max(l)).unwrap_or(l);
        let ok = deg_gb.is_none_or(|d| d <= bound);
        checks.record(
            "gb_degree_bounded_by_decomposition",
            ok,
            format!("deg(G) = {deg_gb:?}, max(1 + deg(Q), l) = {bound}"),
        );
    }

    // ---- EXACT and the Macaulay constants
    let p_asc = exact(spec, &q_asc)?;
    let p_desc = exact(spec, &q_desc)?;
    checks.record(
        "exact_output_is_q_exact",
        is_q_exact(spec, &p_asc, p_asc.q) && is_q_exact(spec, &p_desc, p_desc.q),
        format!("q = {}", p_asc.q),
    );
    let degrees_dont_drop = p_asc.degree(spec) >= q_asc.degree(spec)
        && p_asc.positive_degree(spec) >= q_asc.positive_degree(spec);
    checks.record(
        "exact_degrees_do_not_drop",
        degrees_dont_drop,
        String::new(),
    );

    let mc = macaulay_constants(spec, &p_asc)?;
    let mc_desc = macaulay_constants(spec, &p_desc)?;
    checks.record(
        "macaulay_accounting",
        constants_accounting_holds(spec, &p_asc, &mc),
        format!("b = {:?}", mc.b),
    );
    checks.record(
        "constants_independent_of_split_policy",
        mc.b == mc_desc.b,
        format!("ascending {:?} vs descending {:?}", mc.b, mc_desc.b),
    );
    checks.record(
        "hp_from_constants_matches_enumeration",
        hp_identities_hold(spec, &init, &p_asc, &mc, opts),
        String::new(),
    );

    // regularity route consistency: HP from the series; dimension from HP
    let (hp_series, _reg) = hp_and_regularity(&hs);
    let r_from_series = hp_series.degree().map_or(0, |d| d + 1);
    checks.record(
        "dimension_routes_agree",
        if graded { r_from_series == r } else { true },
        format!("series route {r_from_series}, intrinsic route {r}"),
    );

    // ---- Fitting ideal
    let pm = presentation(fm, &gens);
    let fitting = fitting0(&pm, n, spec.field(), true);
    let fitting_degrees: Vec<u64> = fitting.iter().filter_map(|p| p.degree()).collect();

    if graded && !gens.is_empty() {
        if gens.len() >= m {
            let mut gd: Vec<u64> = gens.iter().filter_map(|g| fm.degree(g)).collect();
            gd.sort_unstable_by(|a, b| b.cmp(a));
            let sharp: i64 = gd[..m].iter().map(|&d| d as i64).sum::<i64>()
                - spec.basis_degrees().iter().map(|&d| d as i64).sum::<i64>();
            let ok = fitting_degrees.iter().all(|&d| (d as i64) <= sharp)
                && sharp <= (dmax.unwrap_or(0) * m as u64) as i64;
            checks.record(
                "fitting_degree_bound",
                ok,
                format!("max fitting degree {:?} <= {sharp}", fitting_degrees.first()),
            );
        } else {
            checks.skip(
                "fitting_degree_bound",
                "fewer generators than the rank, Fitt_0 = 0".into(),
            );
        }
    }

    let ann_ok = fitting.iter().all(|p| {
        (0..m).all(|j| normal_form(fm, &poly_times_basis(fm, p, j), &gb.elements).is_zero())
    });
    checks.record(
        "fitting_inside_annihilator",
        ann_ok,
        format!("{} generators times {} positions", fitting.len(), m),
    );

    // ---- regular sequence and the complete-intersection comparison
    if graded && r < n && !fitting.is_empty() {
        match find_regular_sequence(spec.field(), n, &fitting, n - r, opts.seed) {
            Err(Error::RegularSequenceSearch(why)) => {
                checks.skip("regular_sequence", why.clone());
                checks.skip("degree_vs_complete_intersection", why);
            }
            Err(e) => return Err(e),
            Ok(cert) => {
                let dims_ok = cert
                    .prefix_dims
                    .iter()
                    .enumerate()
                    .all(|(i, &d)| d == n - (i + 1));
                checks.record(
                    "regular_sequence",
                    dims_ok,
                    format!("prefix dimensions {:?}", cert.prefix_dims),
                );
                let mut ds: Vec<u64> =
                    cert.elements.iter().filter_map(|g| g.degree()).collect();
                ds.sort_unstable_by(|a, b| b.cmp(a));
                let dsum: u64 = ds.iter().sum();
                let dthm = dmax.unwrap_or(0).max(l);
                // 1 + deg(P+) participates only when the decomposition of
                // N_{JF} has a positive part, i.e. when r >= 1
                let b1_term: Option<u64> = if r >= 1 {
                    Some(pure_power_b1(spec, &ds, dthm)?)
                } else {
                    None
                };
                let reg_term = dsum as i64 + l as i64 - n as i64 + 1;
                let rhs = b1_term.map_or(reg_term, |b1| (b1 as i64).max(reg_term));
                let lhs = deg_q.map_or(0, |d| d as i64 + 1);
                checks.record(
                    "degree_vs_complete_intersection",
                    lhs <= rhs,
                    format!("1 + deg(Q) = {lhs} <= max(b_1 = {b1_term:?}, sum + l - n + 1 = {reg_term})"),
                );
            }
        }
    }

    // ---- closed-form bounds vs the actual degree
    let mut gd: Vec<u64> = gens.iter().filter_map(|g| fm.degree(g)).collect();
    gd.sort_unstable_by(|a, b| b.cmp(a));
    let inputs = BoundInputs {
        n,
        m,
        r,
        dmax: dmax.unwrap_or(0).max(l),
        gen_degrees: gd,
        l,
        basis_degree_sum: spec.basis_degrees().iter().sum(),
        fitting_degrees: if fitting.is_empty() {
            None
        } else {
            Some(fitting_degrees.clone())
        },
    };
    let bounds = BoundReport::assemble(&inputs, graded, deg_gb)?;
    let violations = bounds.violations();
    checks.record(
        "bounds_dominate_actual_degree",
        violations.is_empty(),
        if violations.is_empty() {
            format!("deg(G) = {deg_gb:?}")
        } else {
            format!("violated: {violations:?}")
        },
    );

    Ok(InstanceReport {
        name: name.to_string(),
        graded,
        n,
        m,
        r,
        max_gen_degree: dmax,
        max_basis_degree: l,
        reduced_gb_degree: deg_gb,
        reduced_gb_size: gb.elements.len(),
        decomposition_degree: deg_q,
        macaulay_constants: mc.b.clone(),
        fitting_degrees,
        bounds,
        checks: checks.0,
    })
}

/// b_1 of a D-exact decomposition of N_{JF} for pure powers of the given
/// degrees. Uses the closed layer construction when D >= max(2, l) and the
/// generic SPLIT/EXACT route otherwise (possible because D >= l always).
fn pure_power_b1(
    spec: &crate::module::FreeModuleSpec,
    degrees_desc: &[u64],
    big_d: u64,
) -> Result<u64, Error> {
    if big_d >= 2u64.max(spec.max_basis_degree()) {
        return Ok(pure_power_constants(spec, degrees_desc, big_d, DEFAULT_LAYER_LIMIT)?.b[1]);
    }
    let n = spec.nvars();
    let gens = (0..spec.rank()).flat_map(|pos| {
        degrees_desc.iter().enumerate().map(move |(i, &d)| ModuleMonomial {
            mono: Monomial::var_pow(n, i, u32::try_from(d).expect("degree fits u32")),
            pos,
        })
    });
    let msub = MonomialSubmodule::from_generators(spec.rank(), gens);
    let q = decompose_normal_forms(spec, &msub, SplitPolicy::AscendingVars)?;
    let lifted = lift_to_d_standard(spec, &q, q.q, big_d)?;
    let p = exact(spec, &ConeDecomposition::new(lifted.cones, big_d))?;
    let mc = macaulay_constants(spec, &p)?;
    Ok(mc.b[1])
}

fn nongraded_checks(
    fm: &FreeModule,
    gens: &[ModuleElement],
    direct_gb: &GroebnerBasis,
    checks: &mut Checks,
) -> Result<(), Error> {
    let ext = homogenized_module(fm)?;
    let hgens: Vec<ModuleElement> = gens
        .iter()
        .map(|g| homogenize(fm, &ext, g))
        .collect::<Result<_, _>>()?;

    // homogenize/dehomogenize round trip
    let roundtrip = gens.iter().zip(&hgens).all(|(g, h)| {
        crate::structure::dehomogenize(fm, h) == *g && ext.is_homogeneous(h)
    });
    checks.record("homogenization_roundtrip", roundtrip, String::new());

    // graded Gröbner run on the homogenized module
    let hgb = reduced_groebner_basis(&ext, &hgens);
    let hdeg = hgb.max_degree(&ext);
    let hinit = initial_module(&ext, &hgb);
    if hinit.is_full() {
        return Err(Error::FullModule);
    }
    let hq = decompose_normal_forms(&ext.spec, &hinit, SplitPolicy::AscendingVars)?;
    let hl = ext.spec.max_basis_degree();
    let hbound = hq.degree(&ext.spec).map(|d| (d + 1).max(hl)).unwrap_or(hl);
    checks.record(
        "gb_degree_bounded_by_decomposition",
        hdeg.is_none_or(|d| d <= hbound),
        format!("homogenized module: deg = {hdeg:?}, bound = {hbound}"),
    );

    // dehomogenizing a Gröbner basis gives a Gröbner basis
    let deh = dehomogenize_all(fm, &hgb.elements);
    checks.record(
        "dehomogenized_basis_is_groebner",
        is_groebner_basis(fm, &deh),
        "S-pair zero-reduction".into(),
    );

    // ... and reducing it reproduces the directly computed reduced basis
    let via_h = reduce(
        fm,
        &GroebnerBasis {
            elements: deh,
            order: fm.order.clone(),
            reduced: false,
        },
    );
    checks.record(
        "dehomogenized_route_agrees",
        via_h.elements == direct_gb.elements,
        format!(
            "{} vs {} elements",
            via_h.elements.len(),
            direct_gb.elements.len()
        ),
    );
    Ok(())
}

/// Every module monomial of degree <= zmax lies in the submodule or in
/// exactly one cone of the decomposition (and never both).
fn disjoint_cover_of_complement(
    spec: &crate::module::FreeModuleSpec,
    msub: &MonomialSubmodule,
    q: &ConeDecomposition,
    zmax: u64,
) -> bool {
    for z in 0..=zmax {
        for pos in 0..spec.rank() {
            let shift = spec.basis_degree(pos);
            if z < shift {
                continue;
            }
            for mono in crate::monomial::monomials_of_degree(spec.nvars(), z - shift) {
                let u = ModuleMonomial { mono, pos };
                let hits = q.cones.iter().filter(|c| c.contains(&u)).count();
                let expected = usize::from(!msub.contains(&u));
                if hits != expected {
                    return false;
                }
            }
        }
    }
    true
}

/// Exact accounting: b_i = b_{i+1} + #{dim-i positive cones}, and for
/// each degree d with b_{i+1} <= d < b_i exactly one positive cone of
/// degree d, of dimension i.
fn constants_accounting_holds(
    spec: &crate::module::FreeModuleSpec,
    p: &ConeDecomposition,
    mc: &MacaulayConstants,
) -> bool {
    let n = spec.nvars();
    for i in 1..=n {
        let count = p.positive_cones().filter(|c| c.dim() == i).count() as u64;
        if mc.b[i] != mc.b[i + 1] + count {
            return false;
        }
        for d in mc.b[i + 1]..mc.b[i] {
            let at: Vec<&crate::cones::Cone> = p
                .positive_cones()
                .filter(|c| c.degree(spec) == d)
                .collect();
            if at.len() != 1 || at[0].dim() != i {
                return false;
            }
        }
    }
    true
}

/// The closed polynomial form at and above b_0, and the point-cone
/// correction between b_1 and b_0.
fn hp_identities_hold(
    spec: &crate::module::FreeModuleSpec,
    msub: &MonomialSubmodule,
    p: &ConeDecomposition,
    mc: &MacaulayConstants,
    opts: &VerifyOptions,
) -> bool {
    let n = spec.nvars();
    let hp = crate::cones::hp_from_constants(mc, n);
    let top = cap(mc.b[0] + 10, opts);
    for z in mc.b[0]..=top {
        if hp.evaluate(z as i64) != BigInt::from(hf_enumerate(spec, msub, z)) {
            return false;
        }
        // the explicit formula with the clamped binomial agrees there too
        let direct = binomial_clamped(z as i64 - mc.b[n + 1] as i64 + n as i64, n as u64)
            - BigInt::from(1)
            - (1..=n)
                .map(|i| binomial_clamped(z as i64 - mc.b[i] as i64 + i as i64 - 1, i as u64))
                .sum::<BigInt>();
        if direct != hp.evaluate(z as i64) {
            return false;
        }
    }
    for z in mc.b[1]..mc.b[0].min(cap(mc.b[0], opts)) {
        let points = p
            .cones
            .iter()
            .filter(|c| c.dim() == 0 && c.degree(spec) == z)
            .count();
        let want = hp.evaluate(z as i64) + BigInt::from(points);
        if BigInt::from(hf_enumerate(spec, msub, z)) != want {
            return false;
        }
    }
    true
}

/// Options for random corpus generation.
#[derive(Clone, Debug)]
pub struct CorpusOptions {
    pub seed: u64,
    pub count: usize,
    pub nmax: usize,
    pub mmax: usize,
    pub dmax: u64,
    pub field: FieldSpec,
    pub graded_only: bool,
}

impl Default for CorpusOptions {
    fn default() -> Self {
        CorpusOptions {
            seed: 1,
            count: 25,
            nmax: 3,
            mmax: 2,
            dmax: 3,
            field: FieldSpec::Prime(32003),
            graded_only: false,
        }
    }
}

/// Deterministic corpus of sparse random problems, graded and non-graded.
/// Instances that degenerate to M = F are redrawn.
pub fn random_corpus(opts: &CorpusOptions) -> Vec<(String, ProblemFile)> {
    use crate::order::{MonomialOrder, PositionStrategy, RingOrder};

    let mut rng = Rng::new(opts.seed);
    let mut out = Vec::new();
    for idx in 0..opts.count {
        let mut inst = rng.fork();
        let problem = loop {
            let candidate = random_problem(&mut inst, opts);
            if let Some(p) = candidate {
                break p;
            }
        };
        out.push((format!("seed{}-{:03}", opts.seed, idx), problem));
    }
    return out;

    fn random_problem(rng: &mut Rng, opts: &CorpusOptions) -> Option<ProblemFile> {
        let dmax = opts.dmax.max(1);
        let n = 1 + rng.below(opts.nmax.max(1) as u64) as usize;
        let m = 1 + rng.below(opts.mmax.max(1) as u64) as usize;
        let names = ["x", "y", "z", "w", "v", "u"];
        let vars: Vec<String> = (0..n).map(|i| names[i].to_string()).collect();
        let mut basis: Vec<(String, u64)> = (0..m)
            .map(|j| (format!("e{}", j + 1), rng.below(2)))
            .collect();
        basis[0].1 = 0;
        let spec =
            crate::module::FreeModuleSpec::new(vars, basis, opts.field).expect("valid spec");
        let l = spec.max_basis_degree();
        if l > dmax {
            return None;
        }
        let ring = match rng.below(4) {
            0 => RingOrder::Lex,
            1 => RingOrder::GrLex,
            _ => RingOrder::GrevLex,
        };
        let strategy = if rng.below(2) == 0 {
            PositionStrategy::Pot
        } else {
            PositionStrategy::Top
        };
        let fm = FreeModule::new(spec, MonomialOrder::new(ring, strategy, m));
        let graded = opts.graded_only || rng.below(2) == 0;

        let gen_count = 1 + rng.below(3) as usize;
        let mut gens = Vec::new();
        for gi in 0..gen_count {
            let target = if gi == 0 {
                l.max(1) + rng.below(dmax - l.max(1) + 1)
            } else {
                1 + rng.below(dmax)
            };
            let terms = 2 + rng.below(3);
            let mut tlist = Vec::new();
            for _ in 0..terms {
                let deg = if graded {
                    target
                } else {
                    // non-graded: anything up to the target
                    rng.below(target + 1)
                };
                let pos = rng.below(fm.spec.rank() as u64) as usize;
                let shift = fm.spec.basis_degree(pos);
                if deg < shift {
                    continue;
                }
                let mono = random_monomial(rng, fm.spec.nvars(), deg - shift);
                let c = match fm.spec.field() {
                    FieldSpec::Rationals => fm
                        .spec
                        .field()
                        .from_integer(&BigInt::from(rng.range_i64(-9, 9))),
                    FieldSpec::Prime(p) => {
                        fm.spec.field().from_integer(&BigInt::from(rng.below(*p)))
                    }
                };
                tlist.push((c, mono.with_pos(pos)));
            }
            let g = fm.element_from_terms(tlist);
            if !g.is_zero() {
                gens.push(g);
            }
        }
        if gens.is_empty() {
            return None;
        }
        // discard degenerate instances where M = F
        let gb = reduced_groebner_basis(&fm, &gens);
        if initial_module(&fm, &gb).is_full() {
            return None;
        }
        Some(ProblemFile { module: fm, gens })
    }

    fn random_monomial(rng: &mut Rng, nvars: usize, deg: u64) -> Monomial {
        let mut exps = vec![0u32; nvars];
        for _ in 0..deg {
            exps[rng.below(nvars as u64) as usize] += 1;
        }
        Monomial::from_exps(exps)
    }
}

trait WithPos {
    fn with_pos(self, pos: usize) -> ModuleMonomial;
}

impl WithPos for Monomial {
    fn with_pos(self, pos: usize) -> ModuleMonomial {
        ModuleMonomial { mono: self, pos }
    }
}
