//! Shared oracles for the integration suites. Everything here recomputes
//! quantities by definition (enumeration, linear algebra), independent of
//! the implementation paths under test.

use modgb::field::Scalar;
use modgb::groebner::MonomialSubmodule;
use modgb::module::{FreeModule, FreeModuleSpec, ModuleElement, ModuleMonomial};
use modgb::monomial::{monomials_of_degree, Monomial};
use modgb::rng::Rng;
use modgb::FieldSpec;

/// All module monomials of a given degree under the grading.
pub fn module_monomials_of_degree(spec: &FreeModuleSpec, z: u64) -> Vec<ModuleMonomial> {
    let mut out = Vec::new();
    for pos in 0..spec.rank() {
        let shift = spec.basis_degree(pos);
        if z < shift {
            continue;
        }
        for mono in monomials_of_degree(spec.nvars(), z - shift) {
            out.push(ModuleMonomial { mono, pos });
        }
    }
    out
}

/// Row rank by Gaussian elimination over the exact field.
#[allow(dead_code)] // each test target links its own copy of this module
pub fn rank(mut rows: Vec<Vec<Scalar>>) -> usize {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    let mut pivot_row = 0;
    for col in 0..ncols {
        let Some(r) = (pivot_row..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(pivot_row, r);
        let inv = rows[pivot_row][col].inv();
        for rr in pivot_row + 1..rows.len() {
            if !rows[rr][col].is_zero() {
                let factor = rows[rr][col].mul(&inv);
                let pivot = rows[pivot_row].clone();
                for (cell, p) in rows[rr][col..].iter_mut().zip(&pivot[col..]) {
                    *cell = cell.sub(&p.mul(&factor));
                }
            }
        }
        pivot_row += 1;
        rank += 1;
        if pivot_row == rows.len() {
            break;
        }
    }
    rank
}

/// dim_K (M_z) for a graded module by linear algebra on the spanning set
/// {x^b g : deg(x^b g) = z}.
#[allow(dead_code)] // each test target links its own copy of this module
pub fn graded_component_dim(fm: &FreeModule, gens: &[ModuleElement], z: u64) -> usize {
    let cols = module_monomials_of_degree(&fm.spec, z);
    if cols.is_empty() {
        return 0;
    }
    let col_index = |u: &ModuleMonomial| cols.iter().position(|v| v == u).expect("column exists");
    let mut rows = Vec::new();
    for g in gens {
        let Some(d) = fm.degree(g) else { continue };
        if d > z {
            continue;
        }
        for b in monomials_of_degree(fm.spec.nvars(), z - d) {
            let shifted = fm.mono_mul(&b, g);
            let mut row = vec![fm.spec.field().zero(); cols.len()];
            for (c, u) in shifted.terms() {
                row[col_index(u)] = c.clone();
            }
            rows.push(row);
        }
    }
    rank(rows)
}

/// A seeded random monomial submodule with no degree-0 generators (so the
/// submodule is always proper).
#[allow(dead_code)] // each test target links its own copy of this module
pub fn random_monomial_submodule(
    rng: &mut Rng,
    nmax: usize,
    mmax: usize,
    dmax: u64,
) -> (FreeModuleSpec, MonomialSubmodule) {
    let n = 1 + rng.below(nmax as u64) as usize;
    let m = 1 + rng.below(mmax as u64) as usize;
    let names = ["x", "y", "z", "w"];
    let vars: Vec<String> = (0..n).map(|i| names[i].to_string()).collect();
    let mut basis: Vec<(String, u64)> = (0..m)
        .map(|j| (format!("e{}", j + 1), rng.below(2)))
        .collect();
    basis[0].1 = 0;
    let spec = FreeModuleSpec::new(vars, basis, FieldSpec::Rationals).unwrap();
    let mut gens = Vec::new();
    for pos in 0..m {
        let count = rng.below(4);
        for _ in 0..count {
            let deg = 1 + rng.below(dmax);
            let mut exps = vec![0u32; n];
            for _ in 0..deg {
                exps[rng.below(n as u64) as usize] += 1;
            }
            gens.push(ModuleMonomial {
                mono: Monomial::from_exps(exps),
                pos,
            });
        }
    }
    (spec, MonomialSubmodule::from_generators(m, gens))
}
