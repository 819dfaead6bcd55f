use std::cmp::Ordering;
use std::sync::Arc;

use crate::algebra::{Monomial, MonomialOrder};

/// Whether the monomial or the basis position is compared first.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum PositionPolicy {
    #[default]
    TermOverPosition,
    PositionOverTerm,
}

/// A monomial order on a graded free module `⊕ S(-a_j)`.
///
/// Term-over-position with grevlex compares the twisted degree first, so
/// homogeneous computations proceed degree by degree. Among equal terms the
/// lower basis index is larger.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModuleOrder {
    pub monomial: MonomialOrder,
    pub policy: PositionPolicy,
    pub twists: Vec<i32>,
}

impl ModuleOrder {
    pub fn new(monomial: MonomialOrder, policy: PositionPolicy, twists: Vec<i32>) -> Self {
        ModuleOrder { monomial, policy, twists }
    }

    /// Grevlex, term over position.
    pub fn grevlex(twists: Vec<i32>) -> Self {
        Self::new(MonomialOrder::GrevLex, PositionPolicy::TermOverPosition, twists)
    }

    pub(crate) fn engine(&self) -> EngineOrder {
        EngineOrder::Plain {
            mono: self.monomial,
            policy: self.policy,
            twists: self.twists.clone().into(),
        }
    }
}

/// Orders used inside the engine; adds elimination and Schreyer orders to [`ModuleOrder`].
#[derive(Clone, Debug)]
pub(crate) enum EngineOrder {
    Plain { mono: MonomialOrder, policy: PositionPolicy, twists: Arc<[i32]> },
    /// Twisted degree first, then components below `split` above the rest,
    /// then grevlex and position. Eliminates the first block for homogeneous input.
    Elim { twists: Arc<[i32]>, split: usize },
    Schreyer(Arc<SchreyerFrame>),
}

/// The order induced on `⊕ S e_k` by `e_k -> M_k = leads[k]` in the base order.
#[derive(Debug)]
pub(crate) struct SchreyerFrame {
    pub leads: Vec<(Monomial, usize)>,
    pub base: EngineOrder,
    pub twists: Vec<i32>,
}

impl EngineOrder {
    pub fn twist(&self, comp: usize) -> i32 {
        match self {
            EngineOrder::Plain { twists, .. } | EngineOrder::Elim { twists, .. } => twists[comp],
            EngineOrder::Schreyer(f) => f.twists[comp],
        }
    }

    pub fn degree(&self, m: &Monomial, comp: usize) -> i32 {
        m.degree() as i32 + self.twist(comp)
    }

    pub fn cmp(&self, a: (&Monomial, usize), b: (&Monomial, usize)) -> Ordering {
        match self {
            EngineOrder::Plain { mono, policy, twists } => {
                let by_term = || -> Ordering {
                    if *mono == MonomialOrder::GrevLex {
                        let da = a.0.degree() as i32 + twists[a.1];
                        let db = b.0.degree() as i32 + twists[b.1];
                        da.cmp(&db).then_with(|| a.0.cmp_grevlex(b.0))
                    } else {
                        a.0.cmp_lex(b.0)
                    }
                };
                match policy {
                    PositionPolicy::TermOverPosition => by_term().then_with(|| b.1.cmp(&a.1)),
                    PositionPolicy::PositionOverTerm => b.1.cmp(&a.1).then_with(by_term),
                }
            }
            EngineOrder::Elim { twists, split } => {
                let da = a.0.degree() as i32 + twists[a.1];
                let db = b.0.degree() as i32 + twists[b.1];
                da.cmp(&db)
                    .then_with(|| (a.1 < *split).cmp(&(b.1 < *split)))
                    .then_with(|| a.0.cmp_grevlex(b.0))
                    .then_with(|| b.1.cmp(&a.1))
            }
            EngineOrder::Schreyer(f) => {
                let (ma, ca) = f.leads[a.1];
                let (mb, cb) = f.leads[b.1];
                f.base
                    .cmp((&a.0.mul(&ma), ca), (&b.0.mul(&mb), cb))
                    .then_with(|| b.1.cmp(&a.1))
            }
        }
    }
}
