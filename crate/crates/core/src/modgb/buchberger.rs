use std::collections::BTreeMap;
use std::sync::Arc;

use super::module::{
    from_terms, mul_terms, pot_cmp, scale_terms, sub_mul, to_terms, GradedFreeModule, ModuleElement, Terms,
};
use crate::algebra::{Field, Monomial, MonomialOrder};
use crate::error::{Error, ResourceKind, Result};
use crate::limits::Limits;
use crate::par;

/// A reduced Gröbner basis of a homogeneous submodule, possibly truncated
/// at a degree bound.
///
/// Elements are monic, no leading term divides another, and tails are
/// fully reduced, so the basis is unique for the module order. When
/// `degree_bound` is set the basis is only guaranteed to be a Gröbner basis
/// through that degree.
#[derive(Debug, Clone)]
pub struct GroebnerBasis<F: Field> {
    module: Arc<GradedFreeModule<F>>,
    elems: Vec<Terms<F::Elem>>,
    degrees: Vec<i64>,
    degree_bound: Option<i64>,
}

impl<F: Field> GroebnerBasis<F> {
    pub fn module(&self) -> &Arc<GradedFreeModule<F>> {
        &self.module
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    /// `None` when the basis is complete in every degree.
    pub fn degree_bound(&self) -> Option<i64> {
        self.degree_bound
    }

    pub fn is_complete_through(&self, t: i64) -> bool {
        self.degree_bound.is_none_or(|d| t <= d)
    }

    pub fn elements(&self) -> Vec<ModuleElement<F>> {
        self.elems.iter().map(|v| from_terms(&self.module, v)).collect()
    }

    /// Leading `(component, monomial)` of each element.
    pub fn leading_terms(&self) -> Vec<(usize, Monomial)> {
        self.elems.iter().map(|v| (v[0].0, v[0].1.clone())).collect()
    }

    /// Full normal form of `e` modulo the basis.
    pub fn normal_form(&self, e: &ModuleElement<F>) -> ModuleElement<F> {
        let field = self.module.ring().field();
        let order = self.module.ring().order();
        let refs: Vec<&Terms<F::Elem>> = self.elems.iter().collect();
        let nf = full_reduce(field, order, &refs, to_terms(order, e));
        from_terms(&self.module, &nf)
    }

    /// Membership of a homogeneous element; errors when the basis is
    /// truncated below the element's degree.
    pub fn contains(&self, e: &ModuleElement<F>) -> Result<bool> {
        if let Some(d) = e.degree(&self.module)? {
            if !self.is_complete_through(d) {
                return Err(Error::Resource(ResourceKind::Degree));
            }
        }
        Ok(self.normal_form(e).is_zero())
    }
}

fn find_divisor<E>(basis: &[&Terms<E>], comp: usize, m: &Monomial) -> Option<usize> {
    basis.iter().position(|b| b[0].0 == comp && b[0].1.divides(m))
}

/// Reduces every term of `v`, not only the leading one.
pub(crate) fn full_reduce<F: Field>(
    field: &F,
    order: MonomialOrder,
    basis: &[&Terms<F::Elem>],
    mut v: Terms<F::Elem>,
) -> Terms<F::Elem> {
    let mut done: Terms<F::Elem> = Vec::new();
    while !v.is_empty() {
        let (comp, m, c) = v[0].clone();
        match find_divisor(basis, comp, &m) {
            Some(k) => {
                let b = basis[k];
                let q = b[0].1.quotient_of(&m);
                let c = field.div(&c, &b[0].2);
                v = sub_mul(field, order, &v, &c, &q, b);
            }
            None => {
                done.push(v.remove(0));
            }
        }
    }
    done
}

struct BasisElem<E> {
    v: Terms<E>,
    cof: Terms<E>,
}

enum Source {
    Input(usize),
    Pair(usize, usize),
}

struct Item<E> {
    v: Terms<E>,
    cof: Terms<E>,
}

/// One homogeneous Buchberger run with the normal strategy.
///
/// Inputs enter as pseudo-pairs at their own degree. Every processed pair
/// that reduces to zero contributes its cofactor as a syzygy of the inputs
/// when tracking is on; no pair criteria are applied so these syzygies
/// generate the full syzygy module through the degree bound.
pub(crate) struct Run<'a, F: Field> {
    field: &'a F,
    order: MonomialOrder,
    nvars: usize,
    basis: Vec<BasisElem<F::Elem>>,
    basis_deg: Vec<i64>,
    by_comp: Vec<Vec<usize>>,
    track: bool,
    pub(crate) syzygies: Vec<(i64, Terms<F::Elem>)>,
    queue: BTreeMap<i64, Vec<Source>>,
    inputs: Vec<Terms<F::Elem>>,
    pairs_done: usize,
}

impl<'a, F: Field> Run<'a, F> {
    /// `inputs[l]` is an element of the ambient module of degree `degrees[l]`.
    pub(crate) fn new(
        field: &'a F,
        order: MonomialOrder,
        nvars: usize,
        rank: usize,
        inputs: Vec<Terms<F::Elem>>,
        degrees: &[i64],
        track: bool,
    ) -> Self {
        let mut queue: BTreeMap<i64, Vec<Source>> = BTreeMap::new();
        for (l, d) in degrees.iter().enumerate() {
            queue.entry(*d).or_default().push(Source::Input(l));
        }
        Run {
            field,
            order,
            nvars,
            basis: Vec::new(),
            basis_deg: Vec::new(),
            by_comp: vec![Vec::new(); rank],
            track,
            syzygies: Vec::new(),
            queue,
            inputs,
            pairs_done: 0,
        }
    }

    fn top_reduce(
        &self,
        limit: usize,
        mut v: Terms<F::Elem>,
        mut cof: Terms<F::Elem>,
    ) -> (Terms<F::Elem>, Terms<F::Elem>) {
        'outer: while let Some((comp, m, c)) = v.first() {
            for &k in &self.by_comp[*comp] {
                if k >= limit {
                    break;
                }
                let b = &self.basis[k];
                if b.v[0].1.divides(m) {
                    let q = b.v[0].1.quotient_of(m);
                    let c = c.clone();
                    v = sub_mul(self.field, self.order, &v, &c, &q, &b.v);
                    if self.track {
                        cof = sub_mul(self.field, self.order, &cof, &c, &q, &b.cof);
                    }
                    continue 'outer;
                }
            }
            break;
        }
        (v, cof)
    }

    fn materialize(&self, source: Source) -> Item<F::Elem> {
        let one = self.field.one();
        match source {
            Source::Input(l) => {
                let cof = if self.track {
                    vec![(l, Monomial::one(self.nvars), one)]
                } else {
                    Vec::new()
                };
                Item {
                    v: self.inputs[l].clone(),
                    cof,
                }
            }
            Source::Pair(k, l) => {
                let (bk, bl) = (&self.basis[k], &self.basis[l]);
                let lcm = bk.v[0].1.lcm(&bl.v[0].1);
                let qk = bk.v[0].1.quotient_of(&lcm);
                let ql = bl.v[0].1.quotient_of(&lcm);
                let v = sub_mul(self.field, self.order, &mul_terms(&bk.v, &qk), &one, &ql, &bl.v);
                let cof = if self.track {
                    sub_mul(self.field, self.order, &mul_terms(&bk.cof, &qk), &one, &ql, &bl.cof)
                } else {
                    Vec::new()
                };
                Item { v, cof }
            }
        }
    }

    /// Processes every degree `<= bound` (all degrees when `bound` is
    /// `None`). Returns whether work beyond the bound remains.
    pub(crate) fn run(&mut self, bound: Option<i64>, limits: &Limits) -> Result<bool> {
        while let Some((&d, _)) = self.queue.first_key_value() {
            match bound {
                Some(b) if d > b => return Ok(true),
                None => limits.check_degree(d)?,
                _ => {}
            }
            limits.check_time()?;
            let sources = self.queue.remove(&d).unwrap_or_default();
            self.pairs_done += sources.len();
            if self.pairs_done > limits.max_pairs {
                return Err(Error::Resource(ResourceKind::Pairs));
            }
            let snapshot = self.basis.len();
            let items: Vec<Item<F::Elem>> = sources.into_iter().map(|s| self.materialize(s)).collect();
            let this = &*self;
            let reduced = par::map(limits.parallel, items, |it| {
                let (v, cof) = this.top_reduce(snapshot, it.v, it.cof);
                Item { v, cof }
            });
            for it in reduced {
                let (mut v, mut cof) = self.top_reduce(self.basis.len(), it.v, it.cof);
                if v.is_empty() {
                    if self.track && !cof.is_empty() {
                        self.syzygies.push((d, cof));
                    }
                    continue;
                }
                let inv = self.field.inv(&v[0].2);
                scale_terms(self.field, &mut v, &inv);
                scale_terms(self.field, &mut cof, &inv);
                let idx = self.basis.len();
                let comp = v[0].0;
                let lead = v[0].1.clone();
                for &k in &self.by_comp[comp] {
                    let lcm = self.basis[k].v[0].1.lcm(&lead);
                    let pd = lcm.degree() as i64 + (d - lead.degree() as i64);
                    self.queue.entry(pd).or_default().push(Source::Pair(k, idx));
                }
                self.by_comp[comp].push(idx);
                self.basis.push(BasisElem { v, cof });
                self.basis_deg.push(d);
            }
        }
        Ok(false)
    }

    /// Interreduced, monic, canonically ordered basis.
    pub(crate) fn reduced_basis(&self) -> (Vec<Terms<F::Elem>>, Vec<i64>) {
        let n = self.basis.len();
        let minimal: Vec<usize> = (0..n)
            .filter(|&i| {
                let (ci, mi) = (self.basis[i].v[0].0, &self.basis[i].v[0].1);
                !(0..n).any(|k| {
                    k != i
                        && self.basis[k].v[0].0 == ci
                        && self.basis[k].v[0].1.divides(mi)
                        && (self.basis[k].v[0].1 != *mi || k < i)
                })
            })
            .collect();
        let mut out: Vec<(Terms<F::Elem>, i64)> = minimal
            .iter()
            .map(|&i| {
                let others: Vec<&Terms<F::Elem>> =
                    minimal.iter().filter(|&&k| k != i).map(|&k| &self.basis[k].v).collect();
                let v = &self.basis[i].v;
                let mut r = vec![v[0].clone()];
                r.extend(full_reduce(self.field, self.order, &others, v[1..].to_vec()));
                (r, self.basis_deg[i])
            })
            .collect();
        let order = self.order;
        out.sort_by(|a, b| pot_cmp(order, (b.0[0].0, &b.0[0].1), (a.0[0].0, &a.0[0].1)));
        out.into_iter().unzip()
    }
}

/// Term lists with their degrees.
type Graded<E> = (Vec<Terms<E>>, Vec<i64>);

fn inputs_to_terms<F: Field>(module: &GradedFreeModule<F>, generators: &[ModuleElement<F>]) -> Result<Graded<F::Elem>> {
    let order = module.ring().order();
    let mut terms = Vec::new();
    let mut degrees = Vec::new();
    for g in generators {
        if let Some(d) = g.degree(module)? {
            terms.push(to_terms(order, g));
            degrees.push(d);
        }
    }
    Ok((terms, degrees))
}

/// Reduced Gröbner basis of the submodule generated by `generators`,
/// complete in all degrees. Trips [`ResourceKind::Degree`] if work remains
/// above `limits.max_degree`.
pub fn buchberger<F: Field>(
    module: &Arc<GradedFreeModule<F>>,
    generators: &[ModuleElement<F>],
    limits: &Limits,
) -> Result<GroebnerBasis<F>> {
    run_buchberger(module, generators, None, limits)
}

/// Reduced Gröbner basis through degree `bound`.
pub fn buchberger_truncated<F: Field>(
    module: &Arc<GradedFreeModule<F>>,
    generators: &[ModuleElement<F>],
    bound: i64,
    limits: &Limits,
) -> Result<GroebnerBasis<F>> {
    run_buchberger(module, generators, Some(bound), limits)
}

fn run_buchberger<F: Field>(
    module: &Arc<GradedFreeModule<F>>,
    generators: &[ModuleElement<F>],
    bound: Option<i64>,
    limits: &Limits,
) -> Result<GroebnerBasis<F>> {
    let (terms, degrees) = inputs_to_terms(module, generators)?;
    let field = module.ring().field();
    let mut run = Run::new(
        field,
        module.ring().order(),
        module.ring().nvars(),
        module.rank(),
        terms,
        &degrees,
        false,
    );
    let pending = run.run(bound, limits)?;
    let (elems, degrees) = run.reduced_basis();
    Ok(GroebnerBasis {
        module: module.clone(),
        elems,
        degrees,
        degree_bound: if pending { bound } else { None },
    })
}
