//! Monomial orders on free modules: lex/grlex/grevlex ring orders combined
//! with a position strategy, plus the degree-first extension used after
//! homogenization.

use serde::{Deserialize, Serialize};
use std::cmp::Ordering;

use crate::error::Error;
use crate::module::{FreeModuleSpec, ModuleMonomial};
use crate::monomial::Monomial;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RingOrder {
    Lex,
    GrLex,
    GrevLex,
}

impl RingOrder {
    pub fn name(&self) -> &'static str {
        match self {
            RingOrder::Lex => "lex",
            RingOrder::GrLex => "grlex",
            RingOrder::GrevLex => "grevlex",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PositionStrategy {
    /// Position over term: basis position decides first.
    Pot,
    /// Term over position: the ring order on monomial parts decides first.
    Top,
}

impl PositionStrategy {
    pub fn name(&self) -> &'static str {
        match self {
            PositionStrategy::Pot => "pot",
            PositionStrategy::Top => "top",
        }
    }
}

/// A total order on module monomials, compatible with monomial
/// multiplication and with 1·e_j minimal within each position.
///
/// When `degree_first` is set the order is the extension to the homogenized
/// module: total degree (including the basis-element degree) compares first,
/// and ties are broken by the base order applied with the last variable (the
/// homogenization variable) stripped.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialOrder {
    pub ring: RingOrder,
    pub strategy: PositionStrategy,
    /// rank[j] is the priority rank of position j; lower rank sorts greater.
    /// The default e1 ≻ e2 ≻ … is rank[j] = j.
    pub rank: Vec<usize>,
    pub degree_first: bool,
}

impl MonomialOrder {
    pub fn new(ring: RingOrder, strategy: PositionStrategy, rank_count: usize) -> Self {
        MonomialOrder {
            ring,
            strategy,
            rank: (0..rank_count).collect(),
            degree_first: false,
        }
    }

    /// The extension ≺′ for the homogenized module (one extra variable,
    /// appended last).
    pub fn extended(&self) -> MonomialOrder {
        MonomialOrder {
            ring: self.ring,
            strategy: self.strategy,
            rank: self.rank.clone(),
            degree_first: true,
        }
    }

    /// Total order with ambient-spec validation; the public comparison entry
    /// point. `Ordering::Equal` holds iff a = b.
    pub fn compare(
        &self,
        spec: &FreeModuleSpec,
        a: &ModuleMonomial,
        b: &ModuleMonomial,
    ) -> Result<Ordering, Error> {
        for u in [a, b] {
            if u.mono.nvars() != spec.nvars() {
                return Err(Error::SpecMismatch(format!(
                    "monomial has {} exponents, ambient ring has {} variables",
                    u.mono.nvars(),
                    spec.nvars()
                )));
            }
            if u.pos >= spec.rank() {
                return Err(Error::SpecMismatch(format!(
                    "basis position {} out of range for rank {}",
                    u.pos + 1,
                    spec.rank()
                )));
            }
        }
        Ok(self.cmp_mm(spec, a, b))
    }

    /// Comparison without validation; callers guarantee both monomials
    /// belong to `spec`.
    pub fn cmp_mm(&self, spec: &FreeModuleSpec, a: &ModuleMonomial, b: &ModuleMonomial) -> Ordering {
        if self.degree_first {
            let da = spec.degree_of(a);
            let db = spec.degree_of(b);
            match da.cmp(&db) {
                Ordering::Equal => {}
                ord => return ord,
            }
            // Tie: base order on the monomials with the homogenization
            // variable ignored. Equal stripped parts force equal last
            // exponents because the total degrees agree.
            let n = spec.nvars();
            self.cmp_base(&a.mono, &b.mono, n - 1, a.pos, b.pos)
        } else {
            self.cmp_base(&a.mono, &b.mono, spec.nvars(), a.pos, b.pos)
        }
    }

    fn cmp_base(&self, a: &Monomial, b: &Monomial, width: usize, pa: usize, pb: usize) -> Ordering {
        match self.strategy {
            PositionStrategy::Pot => match self.rank[pb].cmp(&self.rank[pa]) {
                Ordering::Equal => self.cmp_ring(a, b, width),
                ord => ord,
            },
            PositionStrategy::Top => match self.cmp_ring(a, b, width) {
                Ordering::Equal => self.rank[pb].cmp(&self.rank[pa]),
                ord => ord,
            },
        }
    }

    /// Compare the first `width` exponents under the ring order.
    fn cmp_ring(&self, a: &Monomial, b: &Monomial, width: usize) -> Ordering {
        let ae = &a.exps()[..width];
        let be = &b.exps()[..width];
        let deg = |e: &[u32]| e.iter().map(|&x| x as u64).sum::<u64>();
        match self.ring {
            RingOrder::Lex => cmp_lex(ae, be),
            RingOrder::GrLex => match deg(ae).cmp(&deg(be)) {
                Ordering::Equal => cmp_lex(ae, be),
                ord => ord,
            },
            RingOrder::GrevLex => match deg(ae).cmp(&deg(be)) {
                Ordering::Equal => {
                    for i in (0..width).rev() {
                        if ae[i] != be[i] {
                            // smaller trailing exponent is greater
                            return be[i].cmp(&ae[i]);
                        }
                    }
                    Ordering::Equal
                }
                ord => ord,
            },
        }
    }
}

fn cmp_lex(a: &[u32], b: &[u32]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.cmp(y) {
            Ordering::Equal => {}
            ord => return ord,
        }
    }
    Ordering::Equal
}
