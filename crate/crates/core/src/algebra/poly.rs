use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use super::field::Field;
use super::monomial::{Monomial, MonomialOrder};
use crate::error::{Error, Result};

/// A polynomial ring `K[X0, ..., XN]` with named variables and a term order.
#[derive(Debug, Clone, PartialEq)]
pub struct Ring<F: Field> {
    field: F,
    vars: Vec<String>,
    order: MonomialOrder,
}

impl<F: Field> Ring<F> {
    /// Ring with the given variable names and the default order.
    pub fn new(field: F, vars: Vec<String>) -> Result<Arc<Self>> {
        Ring::with_order(field, vars, MonomialOrder::default())
    }

    pub fn with_order(field: F, vars: Vec<String>, order: MonomialOrder) -> Result<Arc<Self>> {
        if vars.is_empty() {
            return Err(Error::OutOfRange("a ring needs at least one variable".into()));
        }
        for (i, v) in vars.iter().enumerate() {
            let ok = v.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !ok {
                return Err(Error::Parse {
                    pos: 0,
                    msg: format!("`{v}` is not a valid variable name"),
                });
            }
            if vars[..i].contains(v) {
                return Err(Error::Parse {
                    pos: 0,
                    msg: format!("variable `{v}` declared twice"),
                });
            }
        }
        Ok(Arc::new(Ring { field, vars, order }))
    }

    /// `K[X0, ..., XN]`, or `K[X, Y, Z]` when `N = 2`.
    pub fn projective(field: F, n_dim: usize) -> Arc<Self> {
        let vars = if n_dim == 2 {
            vec!["X".into(), "Y".into(), "Z".into()]
        } else {
            (0..=n_dim).map(|i| format!("X{i}")).collect()
        };
        Ring::new(field, vars).expect("generated names are valid")
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    /// Dimension `N` of the projective space `Proj` of this ring.
    pub fn n_dim(&self) -> usize {
        self.vars.len() - 1
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    /// Resolves a variable name: declared names, then `X0..XN`, then the
    /// aliases `X, Y, Z` in three variables.
    pub fn var_index(&self, name: &str) -> Option<usize> {
        if let Some(i) = self.vars.iter().position(|v| v == name) {
            return Some(i);
        }
        if let Some(rest) = name.strip_prefix('X') {
            if !rest.is_empty() && rest.bytes().all(|b| b.is_ascii_digit()) {
                if let Ok(i) = rest.parse::<usize>() {
                    if i < self.nvars() && (rest == "0" || !rest.starts_with('0')) {
                        return Some(i);
                    }
                }
            }
        }
        if self.nvars() == 3 {
            return ["X", "Y", "Z"].iter().position(|v| *v == name);
        }
        None
    }

    pub fn with_field<G: Field>(&self, field: G) -> Arc<Ring<G>> {
        Arc::new(Ring {
            field,
            vars: self.vars.clone(),
            order: self.order,
        })
    }
}

/// A sparse polynomial. Terms are kept sorted descending in the ring's
/// order with no zero coefficients, so structural equality is equality.
#[derive(Clone)]
pub struct Polynomial<F: Field> {
    ring: Arc<Ring<F>>,
    terms: Vec<(Monomial, F::Elem)>,
}

impl<F: Field> PartialEq for Polynomial<F> {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms && same_ring(&self.ring, &other.ring)
    }
}

impl<F: Field> Eq for Polynomial<F> {}

fn same_ring<F: Field>(a: &Arc<Ring<F>>, b: &Arc<Ring<F>>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl<F: Field> Polynomial<F> {
    pub fn zero(ring: &Arc<Ring<F>>) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &Arc<Ring<F>>, c: F::Elem) -> Self {
        Polynomial::term(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn one(ring: &Arc<Ring<F>>) -> Self {
        Polynomial::constant(ring, ring.field.one())
    }

    pub fn var(ring: &Arc<Ring<F>>, i: usize) -> Self {
        Polynomial::monomial(ring, Monomial::var(ring.nvars(), i))
    }

    pub fn monomial(ring: &Arc<Ring<F>>, m: Monomial) -> Self {
        Polynomial::term(ring, m, ring.field.one())
    }

    pub fn term(ring: &Arc<Ring<F>>, m: Monomial, c: F::Elem) -> Self {
        assert_eq!(m.nvars(), ring.nvars(), "monomial arity");
        let terms = if ring.field.is_zero(&c) {
            Vec::new()
        } else {
            vec![(m, c)]
        };
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Builds a polynomial from arbitrary terms, combining duplicates and
    /// dropping zeros.
    pub fn from_terms(ring: &Arc<Ring<F>>, mut terms: Vec<(Monomial, F::Elem)>) -> Self {
        let field = &ring.field;
        let order = ring.order;
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        let mut out: Vec<(Monomial, F::Elem)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            assert_eq!(m.nvars(), ring.nvars(), "monomial arity");
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = field.add(lc, &c),
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !field.is_zero(c));
        Polynomial {
            ring: ring.clone(),
            terms: out,
        }
    }

    pub fn ring(&self) -> &Arc<Ring<F>> {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, F::Elem)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, F::Elem)> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn leading_term(&self) -> Option<&(Monomial, F::Elem)> {
        self.terms.first()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m, _)) => self.terms.iter().all(|(t, _)| t.degree() == m.degree()),
        }
    }

    /// The common degree of all terms; `None` for zero or inhomogeneous input.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        if self.is_zero() || !self.is_homogeneous() {
            None
        } else {
            self.degree()
        }
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    /// The monomial if this is a single term with coefficient one.
    pub fn as_monomial(&self) -> Option<&Monomial> {
        match self.terms.as_slice() {
            [(m, c)] if self.ring.field.is_one(c) => Some(m),
            _ => None,
        }
    }

    fn check_ring(&self, other: &Self) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        Ok(self.merge(other, false))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        Ok(self.merge(other, true))
    }

    fn merge(&self, other: &Self, negate: bool) -> Self {
        let field = &self.ring.field;
        let order = self.ring.order;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let rhs = |c: &F::Elem| if negate { field.neg(c) } else { c.clone() };
        while i < self.terms.len() && j < other.terms.len() {
            let (ma, ca) = &self.terms[i];
            let (mb, cb) = &other.terms[j];
            match order.cmp(ma, mb) {
                Ordering::Greater => {
                    out.push((ma.clone(), ca.clone()));
                    i += 1;
                }
                Ordering::Less => {
                    out.push((mb.clone(), rhs(cb)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { field.sub(ca, cb) } else { field.add(ca, cb) };
                    if !field.is_zero(&c) {
                        out.push((ma.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        out.extend(other.terms[j..].iter().map(|(m, c)| (m.clone(), rhs(c))));
        Polynomial {
            ring: self.ring.clone(),
            terms: out,
        }
    }

    pub fn neg(&self) -> Self {
        let field = &self.ring.field;
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), field.neg(c))).collect(),
        }
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let field = &self.ring.field;
        if field.is_zero(c) {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), field.mul(a, c))).collect(),
        }
    }

    /// Multiplies by `c * m`. Term orders are multiplicative, so the result
    /// stays sorted.
    pub fn mul_term(&self, m: &Monomial, c: &F::Elem) -> Self {
        let field = &self.ring.field;
        if field.is_zero(c) {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(t, a)| (t.mul(m), field.mul(a, c))).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let field = &self.ring.field;
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                terms.push((ma.mul(mb), field.mul(ca, cb)));
            }
        }
        Ok(Polynomial::from_terms(&self.ring, terms))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Polynomial::one(&self.ring);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).expect("same ring");
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).expect("same ring");
            }
        }
        acc
    }

    /// Substitutes `Xi -> Xi^k` for every variable.
    pub fn substitute_powers(&self, k: u32) -> Result<Self> {
        if k == 0 {
            return Err(Error::OutOfRange("power substitution needs k >= 1".into()));
        }
        Ok(Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.scale_exponents(k), c.clone()))
                .collect(),
        })
    }

    /// Rewrites the polynomial over a ring with a different field via a
    /// coefficient map; the caller supplies a ring with the same variables.
    pub fn map_coeffs<G: Field>(
        &self,
        ring: &Arc<Ring<G>>,
        mut f: impl FnMut(&F::Elem) -> Result<G::Elem>,
    ) -> Result<Polynomial<G>> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            terms.push((m.clone(), f(c)?));
        }
        Ok(Polynomial::from_terms(ring, terms))
    }

    /// Evaluates the coefficient of monomial `m`.
    pub fn coeff(&self, m: &Monomial) -> F::Elem {
        self.terms
            .iter()
            .find(|(t, _)| t == m)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(|| self.ring.field.zero())
    }
}

impl<F: Field> fmt::Display for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let field = &self.ring.field;
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = field.is_negative(c);
            let abs = if neg { field.neg(c) } else { c.clone() };
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mono = format_monomial(&self.ring, m);
            if m.is_one() {
                write!(f, "{}", field.format(&abs))?;
            } else if field.is_one(&abs) {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{}*{mono}", field.format(&abs))?;
            }
        }
        Ok(())
    }
}

impl<F: Field> fmt::Debug for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

/// `X^2*Y*Z^3` style text for a monomial; `1` for the unit.
pub fn format_monomial<F: Field>(ring: &Ring<F>, m: &Monomial) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.exps().iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(ring.vars[i].clone()),
            _ => parts.push(format!("{}^{e}", ring.vars[i])),
        }
    }
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}
