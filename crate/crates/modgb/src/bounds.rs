//! Arbitrary-precision evaluation of the closed-form degree bounds and
//! assembly of comparative bound reports.

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;
use std::collections::BTreeMap;

use crate::error::Error;

/// Everything the bound formulas consume. Generator and fitting degrees are
/// sorted descending.
#[derive(Clone, Debug)]
pub struct BoundInputs {
    pub n: usize,
    pub m: usize,
    pub r: usize,
    /// D = max generator degree.
    pub dmax: u64,
    /// D_1 >= D_2 >= … generator degrees.
    pub gen_degrees: Vec<u64>,
    /// l = max basis degree.
    pub l: u64,
    pub basis_degree_sum: u64,
    /// d_1 >= d_2 >= … degrees of a generating set of Fitt_0(F/M), when known.
    pub fitting_degrees: Option<Vec<u64>>,
}

impl BoundInputs {
    /// The standing hypothesis D >= l; violations are rejected with the
    /// remedy (drop the top-degree summand of F, which the module cannot
    /// touch, and retry).
    pub fn validate(&self) -> Result<(), Error> {
        if self.dmax < self.l {
            return Err(Error::InvalidInput(format!(
                "max generator degree D = {} is below the max basis degree l = {}; \
                 basis elements of degree above D generate a free summand untouched by the \
                 module and can be dropped before rerunning",
                self.dmax, self.l
            )));
        }
        if self.r > self.n {
            return Err(Error::InvalidInput(format!(
                "dimension r = {} exceeds variable count n = {}",
                self.r, self.n
            )));
        }
        Ok(())
    }

    fn fitting_head(&self, count: usize) -> Option<Vec<u64>> {
        let d = self.fitting_degrees.as_ref()?;
        if d.len() < count {
            return None;
        }
        Some(d[..count].to_vec())
    }
}

/// ceil(2 · (a/2)^(2^e)) computed exactly: a^E / 2^(E-1) rounded up, with
/// E = 2^e. Rounding up preserves the upper bound when a is odd.
fn two_half_pow(a: &BigInt, e: u32) -> BigInt {
    let exp = u32::try_from(2u64.pow(e)).expect("exponent fits u32");
    let num = a.pow(exp);
    let den = BigInt::from(2u8).pow(exp - 1);
    // ceiling division; all quantities are positive
    (num + &den - BigInt::one()) / den
}

fn product(values: &[u64]) -> BigInt {
    values.iter().fold(BigInt::one(), |acc, &v| acc * BigInt::from(v))
}

/// Graded bound from Fitting-ideal degrees:
/// r = 0: d_1 + … + d_n + l - n + 1;
/// r >= 1: 2[(d_1 ⋯ d_{n-r} m + D)/2]^(2^(r-1)).
pub fn bound_graded_fitting(inp: &BoundInputs) -> Result<Option<BigInt>, Error> {
    inp.validate()?;
    let need = inp.n - inp.r;
    if inp.r == 0 {
        let Some(d) = inp.fitting_head(inp.n) else {
            return Ok(None);
        };
        let sum: BigInt = d.iter().map(|&x| BigInt::from(x)).sum();
        return Ok(Some(
            sum + BigInt::from(inp.l) - BigInt::from(inp.n as u64) + BigInt::one(),
        ));
    }
    let Some(d) = inp.fitting_head(need) else {
        return Ok(None);
    };
    let a = product(&d) * BigInt::from(inp.m as u64) + BigInt::from(inp.dmax);
    Ok(Some(two_half_pow(&a, (inp.r - 1) as u32)))
}

/// Graded bound from generator degrees only. Returns (sharp, coarse): the
/// sharp variant uses D_1 + … + D_m - Σ deg(e_j) and needs at least m
/// generator degrees; the coarse variant replaces that sum by Dm.
pub fn bound_graded(inp: &BoundInputs) -> Result<(Option<BigInt>, BigInt), Error> {
    inp.validate()?;
    let coarse_sum = BigInt::from(inp.dmax) * BigInt::from(inp.m as u64);
    let sharp_sum = if inp.gen_degrees.len() >= inp.m {
        let top: BigInt = inp.gen_degrees[..inp.m].iter().map(|&x| BigInt::from(x)).sum();
        Some(top - BigInt::from(inp.basis_degree_sum))
    } else {
        None
    };
    let eval = |sum: &BigInt| -> BigInt {
        if inp.r == 0 {
            sum * BigInt::from(inp.n as u64) + BigInt::from(inp.l) - BigInt::from(inp.n as u64)
                + BigInt::one()
        } else {
            let a = sum.pow(u32::try_from(inp.n - inp.r).expect("n-r fits u32"))
                * BigInt::from(inp.m as u64)
                + BigInt::from(inp.dmax);
            two_half_pow(&a, (inp.r - 1) as u32)
        }
    };
    Ok((sharp_sum.as_ref().map(&eval), eval(&coarse_sum)))
}

/// 2 (Dm)^(2^(n-1)), graded and dimension-free.
pub fn bound_graded_dimfree(inp: &BoundInputs) -> Result<BigInt, Error> {
    inp.validate()?;
    let dm = BigInt::from(inp.dmax) * BigInt::from(inp.m as u64);
    let e = u32::try_from(2u64.pow((inp.n - 1) as u32)).expect("exponent fits u32");
    Ok(BigInt::from(2u8) * dm.pow(e))
}

/// Non-graded bound from Fitting-ideal degrees:
/// 2[((d_1 ⋯ d_{n-r})^(n-r) m + D)/2]^(2^r).
pub fn bound_nongraded_fitting(inp: &BoundInputs) -> Result<Option<BigInt>, Error> {
    inp.validate()?;
    let need = inp.n - inp.r;
    let Some(d) = inp.fitting_head(need) else {
        return Ok(None);
    };
    let a = product(&d).pow(u32::try_from(need).expect("n-r fits u32"))
        * BigInt::from(inp.m as u64)
        + BigInt::from(inp.dmax);
    Ok(Some(two_half_pow(&a, inp.r as u32)))
}

/// Non-graded bound from generator data only:
/// 2[((Dm)^((n-r)^2) m + D)/2]^(2^r).
pub fn bound_nongraded(inp: &BoundInputs) -> Result<BigInt, Error> {
    inp.validate()?;
    let dm = BigInt::from(inp.dmax) * BigInt::from(inp.m as u64);
    let sq = u32::try_from(((inp.n - inp.r) as u64).pow(2)).expect("(n-r)^2 fits u32");
    let a = dm.pow(sq) * BigInt::from(inp.m as u64) + BigInt::from(inp.dmax);
    Ok(two_half_pow(&a, inp.r as u32))
}

/// 2 (Dm)^(2^n), dimension-free without gradedness assumptions.
pub fn bound_dimfree_nongraded(inp: &BoundInputs) -> Result<BigInt, Error> {
    inp.validate()?;
    let dm = BigInt::from(inp.dmax) * BigInt::from(inp.m as u64);
    let e = u32::try_from(2u64.pow(inp.n as u32)).expect("exponent fits u32");
    Ok(BigInt::from(2u8) * dm.pow(e))
}

/// The ideal-case comparison bounds (m = 1 only), non-homogeneous and
/// homogeneous variants; the homogeneous formula is stated for r >= 1.
pub fn bound_mayr_ritscher(inp: &BoundInputs) -> Result<Option<(BigInt, Option<BigInt>)>, Error> {
    inp.validate()?;
    if inp.m != 1 {
        return Ok(None);
    }
    let need = inp.n - inp.r;
    let Some(d) = inp.fitting_head(need) else {
        return Ok(None);
    };
    let d1 = BigInt::from(inp.fitting_degrees.as_ref().unwrap().first().copied().unwrap_or(1));
    let prod = product(&d);
    let a_nonhom = prod.pow(u32::try_from(2 * need).expect("fits")) + &d1;
    let nonhom = two_half_pow(&a_nonhom, inp.r as u32);
    let hom = if inp.r >= 1 {
        let a = prod + &d1;
        Some(two_half_pow(&a, (inp.r - 1) as u32))
    } else {
        None
    };
    Ok(Some((nonhom, hom)))
}

/// One line of a bound report.
#[derive(Clone, Debug, Serialize)]
pub struct BoundEntry {
    pub value: Option<String>,
    pub note: String,
}

/// All applicable degree bounds side by side with the actual reduced
/// Gröbner basis degree. The headline property: every applicable bound is
/// at least the actual degree.
#[derive(Clone, Debug, Serialize)]
pub struct BoundReport {
    pub graded: bool,
    pub actual_degree: Option<u64>,
    pub bounds: BTreeMap<String, BoundEntry>,
}

impl BoundReport {
    pub fn assemble(
        inp: &BoundInputs,
        graded: bool,
        actual_degree: Option<u64>,
    ) -> Result<BoundReport, Error> {
        let mut bounds = BTreeMap::new();
        let mut put = |name: &str, v: Option<BigInt>, note: &str| {
            bounds.insert(
                name.to_string(),
                BoundEntry {
                    value: v.map(|b| b.to_string()),
                    note: note.to_string(),
                },
            );
        };
        if graded {
            let gf = bound_graded_fitting(inp)?;
            put(
                "graded_fitting",
                gf,
                "graded bound from Fitting-ideal degrees",
            );
            let (sharp, coarse) = bound_graded(inp)?;
            put(
                "graded_gen_degrees",
                sharp,
                "graded bound from the top m generator degrees",
            );
            put("graded_coarse", Some(coarse), "graded bound from D, m, n, r");
            put(
                "graded_dimension_free",
                Some(bound_graded_dimfree(inp)?),
                "graded bound from D, m, n",
            );
        }
        put(
            "nongraded_fitting",
            bound_nongraded_fitting(inp)?,
            "bound from Fitting-ideal degrees, no gradedness assumption",
        );
        put(
            "nongraded",
            Some(bound_nongraded(inp)?),
            "bound from D, m, n, r, no gradedness assumption",
        );
        put(
            "dimension_free",
            Some(bound_dimfree_nongraded(inp)?),
            "bound from D, m, n only",
        );
        if let Some((nonhom, hom)) = bound_mayr_ritscher(inp)? {
            put(
                "ideal_comparison_nonhomogeneous",
                Some(nonhom),
                "ideal-case comparison value (m = 1)",
            );
            put(
                "ideal_comparison_homogeneous",
                hom,
                "ideal-case comparison value (m = 1, homogeneous, r >= 1)",
            );
        }
        Ok(BoundReport {
            graded,
            actual_degree,
            bounds,
        })
    }

    /// Names of bounds that the actual degree exceeds (must be empty for
    /// correct inputs; the comparison columns are excluded).
    pub fn violations(&self) -> Vec<String> {
        let Some(actual) = self.actual_degree else {
            return Vec::new();
        };
        let actual = BigInt::from(actual);
        self.bounds
            .iter()
            .filter(|(name, _)| !name.starts_with("ideal_comparison"))
            .filter_map(|(name, entry)| {
                let v = entry.value.as_ref()?;
                let bound: BigInt = v.parse().expect("bound values are decimal integers");
                (actual > bound).then(|| name.clone())
            })
            .collect()
    }
}
