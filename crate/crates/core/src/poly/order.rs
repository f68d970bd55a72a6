//! Monomial orders: lexicographic, graded-lexicographic and
//! degree-reverse-lexicographic, each with a configurable variable
//! precedence.

use super::Monomial;
use std::cmp::Ordering;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderKind {
    /// Compare exponents variable by variable in precedence order.
    Lex,
    /// Total degree first; degree ties are broken so that listing the
    /// monomials of one degree in ascending order follows the conventional
    /// enumeration 1, x, y, e, x^2, xy, xe, y^2, ye, e^2 (first-precedence
    /// variable first). Equivalently, within a degree the lexicographically
    /// larger monomial is the smaller element.
    GradedLex,
    /// Total degree first; ties broken by the smaller exponent on the last
    /// variable in precedence (the standard definition).
    DegRevLex,
}

/// A total, multiplicative well-order on monomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialOrder {
    kind: OrderKind,
    /// Permutation of variable indices, most significant first.
    precedence: Vec<usize>,
}

impl MonomialOrder {
    pub fn new(kind: OrderKind, nvars: usize) -> Self {
        MonomialOrder {
            kind,
            precedence: (0..nvars).collect(),
        }
    }

    pub fn with_precedence(kind: OrderKind, precedence: Vec<usize>) -> Self {
        let mut seen = vec![false; precedence.len()];
        for &i in &precedence {
            assert!(i < precedence.len() && !seen[i], "invalid precedence permutation");
            seen[i] = true;
        }
        MonomialOrder { kind, precedence }
    }

    pub fn lex(nvars: usize) -> Self {
        Self::new(OrderKind::Lex, nvars)
    }

    pub fn graded_lex(nvars: usize) -> Self {
        Self::new(OrderKind::GradedLex, nvars)
    }

    pub fn degrevlex(nvars: usize) -> Self {
        Self::new(OrderKind::DegRevLex, nvars)
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn nvars(&self) -> usize {
        self.precedence.len()
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        debug_assert_eq!(a.nvars(), self.precedence.len());
        debug_assert_eq!(b.nvars(), self.precedence.len());
        match self.kind {
            OrderKind::Lex => self.cmp_lex(a, b),
            OrderKind::GradedLex => match a.total_degree().cmp(&b.total_degree()) {
                Ordering::Equal => self.cmp_lex(a, b).reverse(),
                ord => ord,
            },
            OrderKind::DegRevLex => match a.total_degree().cmp(&b.total_degree()) {
                Ordering::Equal => {
                    for &i in self.precedence.iter().rev() {
                        match a.exps()[i].cmp(&b.exps()[i]) {
                            Ordering::Equal => continue,
                            // Smaller exponent on the least variable wins.
                            ord => return ord.reverse(),
                        }
                    }
                    Ordering::Equal
                }
                ord => ord,
            },
        }
    }

    fn cmp_lex(&self, a: &Monomial, b: &Monomial) -> Ordering {
        for &i in &self.precedence {
            match a.exps()[i].cmp(&b.exps()[i]) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        Ordering::Equal
    }
}
