//! The explicit layer-by-layer D-exact decomposition of the normal forms of
//! JF for a pure-power ideal J = (x_1^{d_1},…,x_{n-r}^{d_{n-r}}), together
//! with its Macaulay constants.
//!
//! The constants-only variant tracks degree sequences instead of monomials:
//! per-layer sizes grow roughly quadratically (b_{k-1} ≤ ½ b_k²), so the
//! innermost layer is never materialized when only b_0,…,b_{n+1} are
//! needed.

use super::{Cone, ConeDecomposition, MacaulayConstants};
use crate::error::Error;
use crate::module::{FreeModuleSpec, ModuleMonomial};
use crate::monomial::Monomial;

pub const DEFAULT_LAYER_LIMIT: usize = 8_000_000;

fn validate(spec: &FreeModuleSpec, d: &[u64], big_d: u64) -> Result<usize, Error> {
    let n = spec.nvars();
    let l = spec.max_basis_degree();
    if d.len() > n {
        return Err(Error::InvalidInput(format!(
            "{} pure powers in {} variables",
            d.len(),
            n
        )));
    }
    if d.contains(&0) {
        return Err(Error::InvalidInput("pure-power degrees must be >= 1".into()));
    }
    let floor = 2u64.max(l);
    if big_d < floor {
        return Err(Error::InvalidInput(format!(
            "D = {big_d} is below the required max(2, l) = {floor}"
        )));
    }
    Ok(n - d.len())
}

/// Degrees (sorted ascending) of the monomial basis of
/// T_r = span{x^α e_j : α_i < d_i}.
fn base_layer_degrees(d: &[u64], basis_degrees: &[u64]) -> Vec<u64> {
    let mut hist: Vec<u64> = vec![1];
    for &di in d {
        let mut next = vec![0u64; hist.len() + di as usize - 1];
        for (a, &c) in hist.iter().enumerate() {
            for b in 0..di as usize {
                next[a + b] += c;
            }
        }
        hist = next;
    }
    let mut out = Vec::new();
    for &be in basis_degrees {
        for (deg, &cnt) in hist.iter().enumerate() {
            for _ in 0..cnt {
                out.push(deg as u64 + be);
            }
        }
    }
    out.sort_unstable();
    out
}

fn cone_exponent(bk1: u64, rank1: u64, delta: u64) -> u64 {
    let e = bk1 as i64 + rank1 as i64 - delta as i64 - 1;
    assert!(e >= 0, "layer exponent negative; requires D >= max(2, l)");
    e as u64
}

/// Macaulay constants of the layered decomposition, without materializing
/// cones. The vector satisfies b_{r+1} = … = b_{n+1} = D and
/// b_k = b_{k+1} + dim T_k for k = 1,…,r.
pub fn pure_power_constants(
    spec: &FreeModuleSpec,
    d: &[u64],
    big_d: u64,
    limit: usize,
) -> Result<MacaulayConstants, Error> {
    let r = validate(spec, d, big_d)?;
    let n = spec.nvars();
    let mut b = vec![big_d; n + 2];
    let mut degs = base_layer_degrees(d, spec.basis_degrees());
    if r == 0 {
        b[0] = big_d.max(1 + *degs.last().expect("base layer is nonempty"));
        return Ok(MacaulayConstants { b, q: big_d });
    }
    let mut maxdeg_points: Option<u64> = None;
    for k in (1..=r).rev() {
        let bk1 = b[k + 1];
        b[k] = bk1
            .checked_add(degs.len() as u64)
            .ok_or_else(|| Error::LimitExceeded("Macaulay constant overflow".into()))?;
        if k == 1 {
            // only the top degree of T_0 is needed (for b_0)
            for (i, &delta) in degs.iter().enumerate() {
                let e = cone_exponent(bk1, i as u64 + 1, delta);
                if e >= 1 {
                    let top = delta + e - 1;
                    maxdeg_points = Some(maxdeg_points.map_or(top, |m| m.max(top)));
                }
            }
        } else {
            let mut next = Vec::new();
            for (i, &delta) in degs.iter().enumerate() {
                let e = cone_exponent(bk1, i as u64 + 1, delta);
                if next.len() + e as usize > limit {
                    return Err(Error::LimitExceeded(format!(
                        "pure-power layer exceeds {limit} monomials"
                    )));
                }
                for c in 0..e {
                    next.push(delta + c);
                }
            }
            next.sort_unstable();
            degs = next;
        }
    }
    b[0] = b[1].max(maxdeg_points.map_or(0, |m| m + 1));
    Ok(MacaulayConstants { b, q: big_d })
}

/// The full decomposition P = P_0 ∪ {point cones of T_0} along with the
/// constants. The decomposition is D-exact for N_{JF}; for r = 0 the
/// positive part is empty and the constants carry q = D (all b_k = D for
/// k >= 1), matching the pure-power convention rather than the generic
/// empty-positive-part default of 0.
pub fn pure_power_decomposition(
    spec: &FreeModuleSpec,
    d: &[u64],
    big_d: u64,
    limit: usize,
) -> Result<(ConeDecomposition, MacaulayConstants), Error> {
    let r = validate(spec, d, big_d)?;
    let n = spec.nvars();

    // monomial basis of T_r, sorted by degree then canonically
    let mut basis: Vec<ModuleMonomial> = Vec::new();
    let mut stack: Vec<Vec<u32>> = vec![vec![]];
    for &di in d {
        let mut next = Vec::new();
        for partial in &stack {
            for e in 0..di {
                let mut p = partial.clone();
                p.push(e as u32);
                next.push(p);
            }
        }
        stack = next;
    }
    for exps in stack {
        let mut full = exps;
        full.resize(n, 0);
        for pos in 0..spec.rank() {
            basis.push(ModuleMonomial {
                mono: Monomial::from_exps(full.clone()),
                pos,
            });
        }
    }
    let sort_layer = |layer: &mut Vec<ModuleMonomial>| {
        layer.sort_by(|a, b| {
            spec.degree_of(a)
                .cmp(&spec.degree_of(b))
                .then_with(|| a.canonical_cmp(b))
        });
    };
    sort_layer(&mut basis);

    let mut b = vec![big_d; n + 2];
    let mut cones: Vec<Cone> = Vec::new();
    for k in (1..=r).rev() {
        let bk1 = b[k + 1];
        b[k] = bk1 + basis.len() as u64;
        let xvar = n - k;
        let vars: Vec<usize> = (n - k..n).collect();
        let mut next: Vec<ModuleMonomial> = Vec::new();
        for (i, h) in basis.iter().enumerate() {
            let delta = spec.degree_of(h);
            let e = cone_exponent(bk1, i as u64 + 1, delta);
            let e32 = u32::try_from(e)
                .map_err(|_| Error::LimitExceeded("cone exponent exceeds u32".into()))?;
            cones.push(Cone::new(
                h.mul_mono(&Monomial::var_pow(n, xvar, e32)),
                vars.clone(),
            ));
            if next.len() + e as usize > limit {
                return Err(Error::LimitExceeded(format!(
                    "pure-power layer exceeds {limit} monomials"
                )));
            }
            for c in 0..e32 {
                next.push(h.mul_mono(&Monomial::var_pow(n, xvar, c)));
            }
        }
        basis = next;
        sort_layer(&mut basis);
    }

    let maxdeg_points = basis.iter().map(|h| spec.degree_of(h)).max();
    for h in basis {
        cones.push(Cone::new(h, Vec::new()));
    }
    b[0] = b[1].max(maxdeg_points.map_or(0, |m| m + 1));
    // q = D even when the positive part is empty (r = 0); see above.
    Ok((
        ConeDecomposition { cones, q: big_d },
        MacaulayConstants { b, q: big_d },
    ))
}
