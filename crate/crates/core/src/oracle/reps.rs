//! Representation spaces, cyclic relations, and exhaustive counts over them.

use super::field::{Elem, FieldSpec};
use super::matrix::MatrixFq;
use super::{OracleError, GROUP_BUDGET, REP_BUDGET};
use crate::engine::{Quiver, RProvider};
use crate::exactalg::{gl_order, QPolynomial};
use crate::series::DimVector;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, VecDeque};

/// The arrow `i → j` with multiplicity index `k < a_ij`, all zero-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ArrowId {
    pub from: usize,
    pub to: usize,
    pub index: u32,
}

impl ArrowId {
    pub fn new(from: usize, to: usize, index: u32) -> Self {
        ArrowId { from, to, index }
    }
}

/// All arrows of the quiver in lexicographic `(from, to, index)` order.
pub fn arrows(quiver: &Quiver) -> Vec<ArrowId> {
    let n = quiver.vertex_count();
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            out.extend((0..quiver.arrow_count(i, j)).map(|k| ArrowId::new(i, j, k)));
        }
    }
    out
}

/// An integer combination of closed paths sharing one base vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicRelation {
    base: usize,
    terms: Vec<(i64, Vec<ArrowId>)>,
}

impl CyclicRelation {
    pub fn new(quiver: &Quiver, terms: Vec<(i64, Vec<ArrowId>)>) -> Result<Self, OracleError> {
        let bad = |msg: String| Err(OracleError::InvalidRelation(msg));
        let Some(base) = terms.first().and_then(|(_, p)| p.first()).map(|a| a.from) else {
            return bad("a relation needs at least one non-empty path".into());
        };
        for (_, path) in &terms {
            if path.is_empty() {
                return bad("empty path".into());
            }
            for a in path {
                if a.from >= quiver.vertex_count() || a.to >= quiver.vertex_count() || a.index >= quiver.arrow_count(a.from, a.to) {
                    return bad(format!("no arrow {} -> {} with index {}", a.from, a.to, a.index));
                }
            }
            if path.windows(2).any(|w| w[0].to != w[1].from) {
                return bad("path is not composable".into());
            }
            if path[0].from != base || path[path.len() - 1].to != base {
                return bad(format!("path does not start and end at vertex {base}"));
            }
        }
        Ok(CyclicRelation { base, terms })
    }

    pub fn monomial(quiver: &Quiver, path: Vec<ArrowId>) -> Result<Self, OracleError> {
        Self::new(quiver, vec![(1, path)])
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn terms(&self) -> &[(i64, Vec<ArrowId>)] {
        &self.terms
    }

    pub fn arrows(&self) -> impl Iterator<Item = ArrowId> + '_ {
        self.terms.iter().flat_map(|(_, p)| p.iter().copied())
    }

    /// `σ(R)`, with coefficients reduced into the prime field.
    pub fn evaluate<'a, F>(&self, field: &FieldSpec, base_dim: usize, map: F) -> MatrixFq
    where
        F: Fn(ArrowId) -> &'a MatrixFq,
    {
        let mut acc = MatrixFq::zeros(base_dim, base_dim);
        for (c, path) in &self.terms {
            let c = field.from_int(*c);
            if c == 0 {
                continue;
            }
            let mut prod = map(path[0]).clone();
            for &a in &path[1..] {
                prod = prod.mul(field, map(a)).expect("composable path");
            }
            acc = acc.add(field, &prod.scale(field, c)).expect("closed path");
        }
        acc
    }
}

/// The relation sets behind the built-in providers; `None` for tables.
pub fn standard_relations(quiver: &Quiver, provider: &RProvider) -> Option<Vec<CyclicRelation>> {
    let rels = match provider {
        RProvider::NoRelations => Vec::new(),
        RProvider::LoopNilpotent(g) => (0..*g)
            .map(|k| CyclicRelation::monomial(quiver, vec![ArrowId::new(0, 0, k)]))
            .collect::<Result<_, _>>()
            .ok()?,
        RProvider::KroneckerNilpotent(g) => (0..*g)
            .map(|k| CyclicRelation::monomial(quiver, vec![ArrowId::new(0, 1, 0), ArrowId::new(1, 0, k)]))
            .collect::<Result<_, _>>()
            .ok()?,
        RProvider::Table(_) => return None,
    };
    Some(rels)
}

/// Coordinates of a set of arrows: each arrow `i → j` owns an `α_i × α_j`
/// block of consecutive entries.
#[derive(Clone, Debug)]
pub(crate) struct RepLayout {
    pub arrows: Vec<ArrowId>,
    pub shapes: Vec<(usize, usize)>,
    pub offsets: Vec<usize>,
    pub entries: usize,
    position: BTreeMap<ArrowId, usize>,
}

impl RepLayout {
    pub fn new(arrows: Vec<ArrowId>, alpha: &DimVector) -> Self {
        let dims = alpha.components();
        let shapes: Vec<(usize, usize)> = arrows.iter().map(|a| (dims[a.from] as usize, dims[a.to] as usize)).collect();
        let mut offsets = Vec::with_capacity(arrows.len());
        let mut entries = 0;
        for &(r, c) in &shapes {
            offsets.push(entries);
            entries += r * c;
        }
        let position = arrows.iter().enumerate().map(|(i, &a)| (a, i)).collect();
        RepLayout { arrows, shapes, offsets, entries, position }
    }

    pub fn position(&self, a: ArrowId) -> usize {
        self.position[&a]
    }

    pub fn matrices(&self, digits: &[Elem]) -> Vec<MatrixFq> {
        self.shapes
            .iter()
            .zip(&self.offsets)
            .map(|(&(r, c), &o)| MatrixFq::from_data(r, c, digits[o..o + r * c].to_vec()))
            .collect()
    }

    pub fn flatten(&self, maps: &[MatrixFq]) -> Vec<Elem> {
        maps.iter().flat_map(|m| m.data().iter().copied()).collect()
    }
}

fn checked_power(q: u32, e: usize) -> Option<u128> {
    (q as u128).checked_pow(u32::try_from(e).ok()?)
}

fn budget(what: &'static str, q: u32, e: usize, limit: u128) -> Result<u128, OracleError> {
    match checked_power(q, e) {
        Some(n) if n <= limit => Ok(n),
        _ => Err(OracleError::Budget { what, needed: format!("{q}^{e}"), limit: limit.to_string() }),
    }
}

fn decode(code: u128, q: u32, len: usize) -> Vec<Elem> {
    let mut c = code;
    (0..len)
        .map(|_| {
            let d = (c % q as u128) as Elem;
            c /= q as u128;
            d
        })
        .collect()
}

fn encode(digits: &[Elem], q: u32) -> u128 {
    digits.iter().rev().fold(0u128, |acc, &d| acc * q as u128 + d as u128)
}

fn increment(digits: &mut [Elem], q: u32) {
    for d in digits.iter_mut() {
        *d += 1;
        if (*d as u32) < q {
            return;
        }
        *d = 0;
    }
}

/// Counts codes in `0..total` satisfying `pred`, in parallel chunks with
/// an odometer inside each chunk.
pub(crate) fn par_count<P>(total: u128, q: u32, len: usize, pred: P) -> u128
where
    P: Fn(&[Elem]) -> bool + Sync,
{
    const CHUNK: u128 = 4096;
    let chunks = total.div_ceil(CHUNK);
    (0..chunks as u64)
        .into_par_iter()
        .map(|c| {
            let start = c as u128 * CHUNK;
            let end = (start + CHUNK).min(total);
            let mut digits = decode(start, q, len);
            let mut n = 0u128;
            for _ in start..end {
                if pred(&digits) {
                    n += 1;
                }
                increment(&mut digits, q);
            }
            n
        })
        .sum()
}

/// Groups relations whose arrow sets overlap; arrows untouched by any
/// relation are reported separately as free.
pub(crate) fn relation_blocks(all: &[ArrowId], relations: &[CyclicRelation]) -> (Vec<(Vec<ArrowId>, Vec<CyclicRelation>)>, Vec<ArrowId>) {
    let idx: BTreeMap<ArrowId, usize> = all.iter().enumerate().map(|(i, &a)| (a, i)).collect();
    let mut parent: Vec<usize> = (0..all.len()).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for rel in relations {
        let ids: Vec<usize> = rel.arrows().map(|a| idx[&a]).collect();
        for w in ids.windows(2) {
            let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut blocks: BTreeMap<usize, (Vec<ArrowId>, Vec<CyclicRelation>)> = BTreeMap::new();
    for rel in relations {
        let first = rel.arrows().next().expect("relations are non-empty");
        let root = find(&mut parent, idx[&first]);
        blocks.entry(root).or_default().1.push(rel.clone());
    }
    let mut free = Vec::new();
    for (i, &a) in all.iter().enumerate() {
        let root = find(&mut parent, i);
        match blocks.get_mut(&root) {
            Some(b) => b.0.push(a),
            None => free.push(a),
        }
    }
    (blocks.into_values().collect(), free)
}

fn respects(field: &FieldSpec, layout: &RepLayout, maps: &[MatrixFq], relations: &[CyclicRelation], alpha: &DimVector) -> bool {
    relations.iter().all(|rel| {
        let dim = alpha.components()[rel.base()] as usize;
        let value = rel.evaluate(field, dim, |a| &maps[layout.position(a)]);
        value.is_nilpotent(field).expect("relation values are square")
    })
}

/// `|Rep(α, F_q)_R|` by exhaustive enumeration. Arrows are split into
/// blocks linked by shared relations; each block is enumerated on its own
/// (and must fit the budget), free arrows contribute `q^{entries}`.
pub fn count_respecting_reps(
    quiver: &Quiver,
    relations: &[CyclicRelation],
    alpha: &DimVector,
    field: &FieldSpec,
) -> Result<u128, OracleError> {
    let q = field.size();
    let (blocks, free) = relation_blocks(&arrows(quiver), relations);
    let free_entries = RepLayout::new(free, alpha).entries;
    let mut total = checked_power(q, free_entries).ok_or(OracleError::Budget {
        what: "count",
        needed: format!("{q}^{free_entries}"),
        limit: u128::MAX.to_string(),
    })?;
    for (block_arrows, rels) in blocks {
        let layout = RepLayout::new(block_arrows, alpha);
        let size = budget("representation enumeration", q, layout.entries, REP_BUDGET)?;
        let n = par_count(size, q, layout.entries, |digits| respects(field, &layout, &layout.matrices(digits), &rels, alpha));
        total = total.checked_mul(n).ok_or(OracleError::Budget {
            what: "count",
            needed: "overflow".into(),
            limit: u128::MAX.to_string(),
        })?;
    }
    Ok(total)
}

/// Lagrange interpolation of the respecting-representation counts over the
/// given fields.
pub fn interpolate_r(
    quiver: &Quiver,
    relations: &[CyclicRelation],
    alpha: &DimVector,
    fields: &[FieldSpec],
) -> Result<QPolynomial, OracleError> {
    let dims = alpha.components();
    let mut degree = 0u64;
    for i in 0..quiver.vertex_count() {
        for j in 0..quiver.vertex_count() {
            degree += quiver.arrow_count(i, j) as u64 * dims[i] as u64 * dims[j] as u64;
        }
    }
    let mut sizes: Vec<u32> = fields.iter().map(FieldSpec::size).collect();
    sizes.sort_unstable();
    sizes.dedup();
    let needed = degree as usize + 1;
    if sizes.len() < needed {
        return Err(OracleError::InsufficientSamples { needed, got: sizes.len() });
    }
    let mut points = Vec::new();
    for f in fields {
        let x = BigRational::from_integer(BigInt::from(f.size()));
        if points.iter().any(|(px, _)| *px == x) {
            continue;
        }
        let y = BigRational::from_integer(BigInt::from(count_respecting_reps(quiver, relations, alpha, f)?));
        points.push((x, y));
    }
    Ok(lagrange(&points))
}

pub(crate) fn lagrange(points: &[(BigRational, BigRational)]) -> QPolynomial {
    let mut acc = QPolynomial::zero();
    for (i, (xi, yi)) in points.iter().enumerate() {
        let mut basis = QPolynomial::constant(yi.clone());
        for (j, (xj, _)) in points.iter().enumerate() {
            if i != j {
                let lin = &QPolynomial::q() - &QPolynomial::constant(xj.clone());
                basis = (&basis * &lin).scale(&(BigRational::one() / (xi - xj)));
            }
        }
        acc = &acc + &basis;
    }
    acc
}

/// Generators of `GL_n(F_q)`: the transvections `I + E_ij` and
/// `diag(ω, 1, …, 1)` for a primitive `ω`.
fn gl_generators(field: &FieldSpec, n: usize) -> Vec<MatrixFq> {
    let mut gens = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let mut t = MatrixFq::identity(n);
                t.set(i, j, 1);
                gens.push(t);
            }
        }
    }
    let w = field.primitive_element();
    if n > 0 && w != 1 {
        let mut d = MatrixFq::identity(n);
        d.set(0, 0, w);
        gens.push(d);
    }
    gens
}

/// `|GL(α, F_q)|` as an integer.
pub fn gl_alpha_order(alpha: &DimVector, q: u32) -> BigInt {
    alpha.components().iter().fold(BigInt::one(), |acc, &n| {
        let v = gl_order(n).eval_int(q as i64);
        acc * v.to_integer()
    })
}

/// Number of `GL(α, F_q)`-orbits on `Rep(α, F_q)_R`, by breadth-first
/// closure of each unvisited respecting representation under generators.
pub fn orbit_count(
    quiver: &Quiver,
    relations: &[CyclicRelation],
    alpha: &DimVector,
    field: &FieldSpec,
) -> Result<u64, OracleError> {
    let q = field.size();
    let layout = RepLayout::new(arrows(quiver), alpha);
    let size = budget("orbit enumeration", q, layout.entries, REP_BUDGET)?;
    let group = gl_alpha_order(alpha, q);
    if group > BigInt::from(GROUP_BUDGET) {
        return Err(OracleError::Budget { what: "group order", needed: group.to_string(), limit: GROUP_BUDGET.to_string() });
    }
    let size = size.to_usize().expect("budget fits in usize");
    let respecting: Vec<bool> = (0..size)
        .into_par_iter()
        .map(|code| respects(field, &layout, &layout.matrices(&decode(code as u128, q, layout.entries)), relations, alpha))
        .collect();

    // (vertex, g, g^{-1}) for each generator
    let gens: Vec<(usize, MatrixFq, MatrixFq)> = alpha
        .components()
        .iter()
        .enumerate()
        .flat_map(|(v, &n)| {
            gl_generators(field, n as usize).into_iter().map(move |g| {
                let inv = g.inverse(field).expect("generators are invertible");
                (v, g, inv)
            })
        })
        .collect();

    let mut visited = vec![false; size];
    let mut orbits = 0u64;
    let mut queue = VecDeque::new();
    for start in 0..size {
        if visited[start] || !respecting[start] {
            continue;
        }
        orbits += 1;
        visited[start] = true;
        queue.push_back(start);
        while let Some(code) = queue.pop_front() {
            let maps = layout.matrices(&decode(code as u128, q, layout.entries));
            for (v, g, g_inv) in &gens {
                // gσ(a) = g_from^{-1} σ(a) g_to
                let moved: Vec<MatrixFq> = maps
                    .iter()
                    .zip(&layout.arrows)
                    .map(|(m, a)| {
                        let left = if a.from == *v { g_inv.mul(field, m).unwrap() } else { m.clone() };
                        if a.to == *v {
                            left.mul(field, g).unwrap()
                        } else {
                            left
                        }
                    })
                    .collect();
                let next = encode(&layout.flatten(&moved), q) as usize;
                if !visited[next] {
                    visited[next] = true;
                    queue.push_back(next);
                }
            }
        }
    }
    Ok(orbits)
}
