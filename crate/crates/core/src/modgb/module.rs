use std::cmp::Ordering;
use std::sync::Arc;

use crate::algebra::{Field, Monomial, MonomialOrder, Polynomial, Ring};
use crate::error::{Error, Result};

/// A graded free module `⊕ R e_i` with `deg e_i` given explicitly.
///
/// The sheaf `⊕ O(a_i)` corresponds to generator degrees `-a_i`; a section
/// of the twisted sheaf in twist `t` is a module element of degree `t`.
#[derive(Debug, Clone, PartialEq)]
pub struct GradedFreeModule<F: Field> {
    ring: Arc<Ring<F>>,
    degrees: Vec<i64>,
}

impl<F: Field> GradedFreeModule<F> {
    pub fn new(ring: &Arc<Ring<F>>, degrees: Vec<i64>) -> Arc<Self> {
        Arc::new(GradedFreeModule {
            ring: ring.clone(),
            degrees,
        })
    }

    /// The module of `⊕ O(twists[i])`.
    pub fn from_twists(ring: &Arc<Ring<F>>, twists: &[i64]) -> Arc<Self> {
        GradedFreeModule::new(ring, twists.iter().map(|a| -a).collect())
    }

    pub fn ring(&self) -> &Arc<Ring<F>> {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.degrees.len()
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn degree(&self, i: usize) -> i64 {
        self.degrees[i]
    }

    /// Degree of the polynomial coefficient of `e_i` in an element of degree `t`.
    pub fn component_degree(&self, i: usize, t: i64) -> i64 {
        t - self.degrees[i]
    }
}

/// A module element as a dense list of component polynomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleElement<F: Field> {
    comps: Vec<Polynomial<F>>,
}

impl<F: Field> ModuleElement<F> {
    pub fn new(comps: Vec<Polynomial<F>>) -> Self {
        ModuleElement { comps }
    }

    pub fn zero(module: &GradedFreeModule<F>) -> Self {
        ModuleElement {
            comps: vec![Polynomial::zero(&module.ring); module.rank()],
        }
    }

    /// The basis element `e_i`.
    pub fn basis(module: &GradedFreeModule<F>, i: usize) -> Self {
        let mut e = ModuleElement::zero(module);
        e.comps[i] = Polynomial::one(&module.ring);
        e
    }

    pub fn components(&self) -> &[Polynomial<F>] {
        &self.comps
    }

    pub fn into_components(self) -> Vec<Polynomial<F>> {
        self.comps
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Polynomial::is_zero)
    }

    /// Nonzero components as `(index, polynomial)`.
    pub fn support(&self) -> impl Iterator<Item = (usize, &Polynomial<F>)> {
        self.comps.iter().enumerate().filter(|(_, p)| !p.is_zero())
    }

    /// The common degree `deg p_i + deg e_i`, checking homogeneity. `None`
    /// for the zero element.
    pub fn degree(&self, module: &GradedFreeModule<F>) -> Result<Option<i64>> {
        if self.comps.len() != module.rank() {
            return Err(Error::Grading(format!(
                "element has {} components, module has rank {}",
                self.comps.len(),
                module.rank()
            )));
        }
        let mut deg = None;
        for (i, p) in self.support() {
            let d = p
                .homogeneous_degree()
                .ok_or_else(|| Error::NonHomogeneous(format!("component {} is `{p}`", i + 1)))?
                as i64
                + module.degree(i);
            match deg {
                None => deg = Some(d),
                Some(e) if e != d => {
                    return Err(Error::NonHomogeneous(format!(
                        "components have element degrees {e} and {d}"
                    )))
                }
                _ => {}
            }
        }
        Ok(deg)
    }
}

/// Sparse module vector: `(component, monomial, coefficient)` sorted
/// descending in position-over-term order.
pub(crate) type Terms<E> = Vec<(usize, Monomial, E)>;

/// Position over term: a smaller component index is larger; within a
/// component the ring order decides.
pub(crate) fn pot_cmp(order: MonomialOrder, a: (usize, &Monomial), b: (usize, &Monomial)) -> Ordering {
    b.0.cmp(&a.0).then_with(|| order.cmp(a.1, b.1))
}

pub(crate) fn to_terms<F: Field>(order: MonomialOrder, e: &ModuleElement<F>) -> Terms<F::Elem> {
    // components are visited in ascending index, each already sorted
    let mut out = Vec::new();
    for (i, p) in e.support() {
        debug_assert_eq!(p.ring().order(), order);
        out.extend(p.terms().iter().map(|(m, c)| (i, m.clone(), c.clone())));
    }
    out
}

pub(crate) fn from_terms<F: Field>(
    module: &GradedFreeModule<F>,
    terms: &[(usize, Monomial, F::Elem)],
) -> ModuleElement<F> {
    let mut buckets: Vec<Vec<(Monomial, F::Elem)>> = vec![Vec::new(); module.rank()];
    for (i, m, c) in terms {
        buckets[*i].push((m.clone(), c.clone()));
    }
    ModuleElement {
        comps: buckets
            .into_iter()
            .map(|b| Polynomial::from_terms(&module.ring, b))
            .collect(),
    }
}

/// `a - c * m * b` in position-over-term order.
pub(crate) fn sub_mul<F: Field>(
    field: &F,
    order: MonomialOrder,
    a: &[(usize, Monomial, F::Elem)],
    c: &F::Elem,
    m: &Monomial,
    b: &[(usize, Monomial, F::Elem)],
) -> Terms<F::Elem> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let mut pending: Option<(usize, Monomial, F::Elem)> = None;
    let scaled = |t: &(usize, Monomial, F::Elem)| (t.0, t.1.mul(m), field.neg(&field.mul(c, &t.2)));
    while i < a.len() || j < b.len() {
        let next_b = if j < b.len() {
            Some(pending.take().unwrap_or_else(|| scaled(&b[j])))
        } else {
            None
        };
        match (a.get(i), next_b) {
            (Some(ta), Some(tb)) => match pot_cmp(order, (ta.0, &ta.1), (tb.0, &tb.1)) {
                Ordering::Greater => {
                    out.push(ta.clone());
                    i += 1;
                    pending = Some(tb);
                }
                Ordering::Less => {
                    out.push(tb);
                    j += 1;
                }
                Ordering::Equal => {
                    let v = field.add(&ta.2, &tb.2);
                    if !field.is_zero(&v) {
                        out.push((ta.0, tb.1, v));
                    }
                    i += 1;
                    j += 1;
                }
            },
            (Some(ta), None) => {
                out.push(ta.clone());
                i += 1;
            }
            (None, Some(tb)) => {
                out.push(tb);
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

pub(crate) fn scale_terms<F: Field>(field: &F, v: &mut Terms<F::Elem>, c: &F::Elem) {
    for t in v.iter_mut() {
        t.2 = field.mul(&t.2, c);
    }
}

pub(crate) fn mul_terms<E: Clone>(v: &[(usize, Monomial, E)], m: &Monomial) -> Terms<E> {
    v.iter().map(|(i, t, c)| (*i, t.mul(m), c.clone())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_polynomial, Rationals};

    #[test]
    fn element_degree_uses_generator_degrees() {
        let ring = Ring::projective(Rationals, 2);
        // O(-1)^2: generator degrees 1
        let m = GradedFreeModule::from_twists(&ring, &[-1, -1]);
        let e = ModuleElement::new(vec![
            parse_polynomial("Y", &ring).unwrap(),
            parse_polynomial("-X", &ring).unwrap(),
        ]);
        assert_eq!(e.degree(&m).unwrap(), Some(2));
        let bad = ModuleElement::new(vec![
            parse_polynomial("Y^2", &ring).unwrap(),
            parse_polynomial("-X", &ring).unwrap(),
        ]);
        assert!(bad.degree(&m).is_err());
        assert_eq!(ModuleElement::zero(&m).degree(&m).unwrap(), None);
    }

    #[test]
    fn terms_round_trip_and_subtract() {
        let ring = Ring::projective(Rationals, 2);
        let m = GradedFreeModule::new(&ring, vec![0, 0]);
        let e = ModuleElement::new(vec![
            parse_polynomial("X^2 + Y*Z", &ring).unwrap(),
            parse_polynomial("Z^2", &ring).unwrap(),
        ]);
        let order = ring.order();
        let t = to_terms(order, &e);
        assert_eq!(t.len(), 3);
        assert_eq!(from_terms(&m, &t), e);
        let f = Rationals;
        let z = sub_mul(&f, order, &t, &f.one(), &Monomial::one(3), &t);
        assert!(z.is_empty());
        let x = Monomial::var(3, 0);
        let prod = sub_mul(&f, order, &[], &f.from_i64(-1), &x, &t);
        assert_eq!(prod, mul_terms(&t, &x));
    }
}
