//! Euler lattices, sign systems and graded Lie brackets on classes `ζ_α`,
//! with exhaustive checks of the sign axioms and the Lie axioms.
//!
//! Classes are integer vectors in a window `[-W, W]^n`. The point model puts
//! a single degree-0 generator in each class; its bracket is `ε_{α,β} ζ_{α+β}`
//! when `χ(α,β) = -1` and zero otherwise.

use std::collections::{BTreeMap, HashMap};

use rand::Rng;
use rayon::prelude::*;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{usage, Error, Result};
use crate::numkernel::{sign, Rational};

/// How many failures a report lists before it stops collecting.
const MAX_WITNESSES: usize = 8;

/// `Z^n` with a symmetric integer Euler form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerLattice {
    gram: Vec<Vec<i64>>,
}

impl EulerLattice {
    pub fn new(gram: Vec<Vec<i64>>) -> Result<Self> {
        let n = gram.len();
        if n == 0 {
            return usage("lattice rank must be positive");
        }
        for (i, row) in gram.iter().enumerate() {
            if row.len() != n {
                return usage(format!("gram row {i} has length {}, expected {n}", row.len()));
            }
            for j in 0..i {
                if gram[i][j] != gram[j][i] {
                    return usage(format!("gram matrix is not symmetric at ({i},{j})"));
                }
            }
        }
        Ok(EulerLattice { gram })
    }

    /// A random symmetric form with entries in `[-bound, bound]`.
    pub fn random(rng: &mut impl Rng, n: usize, bound: i64) -> Self {
        let mut gram = vec![vec![0; n]; n];
        for i in 0..n {
            for j in i..n {
                let v = rng.gen_range(-bound..=bound);
                gram[i][j] = v;
                gram[j][i] = v;
            }
        }
        EulerLattice { gram }
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn chi(&self, a: &[i64], b: &[i64]) -> i64 {
        bilinear(&self.gram, a, b)
    }

    /// All vectors with coordinates in `[-w, w]`, in lexicographic order.
    pub fn window(&self, w: i64) -> Vec<Vec<i64>> {
        window(self.rank(), w)
    }
}

fn bilinear(m: &[Vec<i64>], a: &[i64], b: &[i64]) -> i64 {
    let mut s = 0;
    for (i, row) in m.iter().enumerate() {
        if a[i] == 0 {
            continue;
        }
        for (j, x) in row.iter().enumerate() {
            s += a[i] * x * b[j];
        }
    }
    s
}

fn window(n: usize, w: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v| {
                (-w..=w).map(move |x| {
                    let mut v = v.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
    }
    out
}

fn add(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LatticeJson {
    rank: usize,
    gram: Vec<Vec<i64>>,
}

impl Serialize for EulerLattice {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        LatticeJson { rank: self.rank(), gram: self.gram.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for EulerLattice {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = LatticeJson::deserialize(d)?;
        if raw.rank != raw.gram.len() {
            return Err(D::Error::custom(format!("rank {} does not match the gram matrix size {}", raw.rank, raw.gram.len())));
        }
        EulerLattice::new(raw.gram).map_err(D::Error::custom)
    }
}

/// Signs `ε_{α,β}`, either `(-1)^{αᵀqβ}` or read from an explicit table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SignSystem {
    Bilinear(Vec<Vec<i64>>),
    Table(HashMap<(Vec<i64>, Vec<i64>), i64>),
}

impl SignSystem {
    /// The all-`+1` sign system.
    pub fn trivial(n: usize) -> Self {
        SignSystem::Bilinear(vec![vec![0; n]; n])
    }

    pub fn sign(&self, a: &[i64], b: &[i64]) -> Result<i64> {
        match self {
            SignSystem::Bilinear(q) => Ok(sign(bilinear(q, a, b))),
            SignSystem::Table(t) => t
                .get(&(a.to_vec(), b.to_vec()))
                .copied()
                .ok_or_else(|| Error::Usage(format!("sign table has no entry for ({a:?}, {b:?})"))),
        }
    }

    /// Tabulate a sign system on all pairs in `[-w, w]^n`.
    pub fn tabulate(&self, n: usize, w: i64) -> Result<Self> {
        let vs = window(n, w);
        let mut t = HashMap::new();
        for a in &vs {
            for b in &vs {
                t.insert((a.clone(), b.clone()), self.sign(a, b)?);
            }
        }
        Ok(SignSystem::Table(t))
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SignEntry {
    a: Vec<i64>,
    b: Vec<i64>,
    sign: i64,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum SignJson {
    Q {
        q: Vec<Vec<i64>>,
    },
    Table {
        table: Vec<SignEntry>,
    },
}

impl Serialize for SignSystem {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            SignSystem::Bilinear(q) => SignJson::Q { q: q.clone() }.serialize(s),
            SignSystem::Table(t) => {
                let mut table: Vec<SignEntry> =
                    t.iter().map(|((a, b), &sign)| SignEntry { a: a.clone(), b: b.clone(), sign }).collect();
                table.sort_by(|x, y| (&x.a, &x.b).cmp(&(&y.a, &y.b)));
                SignJson::Table { table }.serialize(s)
            }
        }
    }
}

impl<'de> Deserialize<'de> for SignSystem {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        match SignJson::deserialize(d)? {
            SignJson::Q { q } => {
                let n = q.len();
                if q.iter().any(|row| row.len() != n) {
                    return Err(D::Error::custom("q must be square"));
                }
                Ok(SignSystem::Bilinear(q))
            }
            SignJson::Table { table } => {
                let mut t = HashMap::new();
                for e in table {
                    if e.sign != 1 && e.sign != -1 {
                        return Err(D::Error::custom(format!("sign must be ±1, got {}", e.sign)));
                    }
                    if t.insert((e.a.clone(), e.b.clone()), e.sign).is_some() {
                        return Err(D::Error::custom(format!("duplicate sign entry for ({:?}, {:?})", e.a, e.b)));
                    }
                }
                Ok(SignSystem::Table(t))
            }
        }
    }
}

/// Upper-triangular `q` with `q_ij = χ_ij + χ_ii χ_jj mod 2` for `i < j`.
pub fn construct_sign_q(l: &EulerLattice) -> SignSystem {
    let n = l.rank();
    let g = l.gram();
    let mut q = vec![vec![0; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            q[i][j] = (g[i][j] + g[i][i] * g[j][j]).rem_euclid(2);
        }
    }
    SignSystem::Bilinear(q)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SignFailure {
    pub axiom: String,
    pub vectors: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SignReport {
    pub check: String,
    pub window: i64,
    pub pairs_checked: usize,
    pub triples_checked: usize,
    pub pass: bool,
    pub failures: Vec<SignFailure>,
}

/// Exhaustive check over `[-w, w]^n` of
/// `ε_{α,β} ε_{β,α} = (-1)^{χ(α,β) + χ(α,α)χ(β,β)}` (symmetry) and
/// `ε_{α,β} ε_{α+β,γ} = ε_{β,γ} ε_{α,β+γ}` (cocycle).
pub fn verify_sign_axioms(s: &SignSystem, l: &EulerLattice, w: i64) -> Result<SignReport> {
    if w <= 0 {
        return usage("window must be positive");
    }
    if let SignSystem::Bilinear(q) = s {
        if q.len() != l.rank() {
            return usage(format!("q has size {}, lattice rank is {}", q.len(), l.rank()));
        }
    }
    let vs = l.window(w);
    let per_a: Vec<Result<(usize, usize, Vec<SignFailure>)>> = vs
        .par_iter()
        .map(|a| {
            let mut fails = Vec::new();
            let (mut pairs, mut triples) = (0, 0);
            for b in &vs {
                pairs += 1;
                let lhs = s.sign(a, b)? * s.sign(b, a)?;
                let rhs = sign(l.chi(a, b) + l.chi(a, a) * l.chi(b, b));
                if lhs != rhs && fails.len() < MAX_WITNESSES {
                    fails.push(SignFailure { axiom: "symmetry".into(), vectors: vec![a.clone(), b.clone()] });
                }
                let ab = add(a, b);
                let e_ab = s.sign(a, b)?;
                for c in &vs {
                    triples += 1;
                    let lhs = e_ab * s.sign(&ab, c)?;
                    let rhs = s.sign(b, c)? * s.sign(a, &add(b, c))?;
                    if lhs != rhs && fails.len() < MAX_WITNESSES {
                        fails.push(SignFailure { axiom: "cocycle".into(), vectors: vec![a.clone(), b.clone(), c.clone()] });
                    }
                }
            }
            Ok((pairs, triples, fails))
        })
        .collect();
    let mut report =
        SignReport { check: "sign_axioms".into(), window: w, pairs_checked: 0, triples_checked: 0, pass: true, failures: Vec::new() };
    for r in per_a {
        let (p, t, f) = r?;
        report.pairs_checked += p;
        report.triples_checked += t;
        if !f.is_empty() {
            report.pass = false;
        }
        let room = MAX_WITNESSES.saturating_sub(report.failures.len());
        report.failures.extend(f.into_iter().take(room));
    }
    Ok(report)
}

/// Coefficient of `ζ_{α+β}` in `[ζ_α, ζ_β]` for the point model.
pub fn point_bracket(a: &[i64], b: &[i64], l: &EulerLattice, s: &SignSystem) -> Result<Rational> {
    if l.chi(a, b) == -1 {
        Ok(Rational::from(s.sign(a, b)?))
    } else {
        Ok(Rational::zero())
    }
}

/// Degree of `ζ` after the shift `|ζ|' = a + 2 - χ(α,α)`.
pub fn shifted_degree(l: &EulerLattice, class: &[i64], degree: i64) -> i64 {
    degree + 2 - l.chi(class, class)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasisElement {
    pub label: String,
    pub class: Vec<i64>,
    pub degree: i64,
}

/// Structure constants on a finite basis. When `complete` is false, a pair
/// with no entry is unknown rather than zero, and checks needing it are skipped.
#[derive(Clone, Debug, PartialEq)]
pub struct BracketTable {
    basis: Vec<BasisElement>,
    index: HashMap<String, usize>,
    entries: HashMap<(usize, usize), Vec<(usize, Rational)>>,
    complete: bool,
}

impl BracketTable {
    pub fn new(basis: Vec<BasisElement>, complete: bool) -> Result<Self> {
        let mut index = HashMap::new();
        for (i, b) in basis.iter().enumerate() {
            if index.insert(b.label.clone(), i).is_some() {
                return usage(format!("duplicate basis label {}", b.label));
            }
        }
        Ok(BracketTable { basis, index, entries: HashMap::new(), complete })
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    fn idx(&self, label: &str) -> Result<usize> {
        self.index.get(label).copied().ok_or_else(|| Error::Usage(format!("unknown basis label {label}")))
    }

    /// Set `[left, right] = Σ c_k · k`.
    pub fn set(&mut self, left: &str, right: &str, terms: Vec<(String, Rational)>) -> Result<()> {
        let (i, j) = (self.idx(left)?, self.idx(right)?);
        let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
        for (k, c) in terms {
            *acc.entry(self.idx(&k)?).or_insert_with(Rational::zero) += &c;
        }
        self.entries.insert((i, j), acc.into_iter().filter(|(_, c)| !c.is_zero()).collect());
        Ok(())
    }

    /// Multiply the entry `[left, right]` by `c`.
    pub fn scale_entry(&mut self, left: &str, right: &str, c: &Rational) -> Result<()> {
        let key = (self.idx(left)?, self.idx(right)?);
        let Some(terms) = self.entries.get_mut(&key) else {
            return usage(format!("no entry for [{left}, {right}]"));
        };
        for (_, v) in terms.iter_mut() {
            *v = &*v * c;
        }
        terms.retain(|(_, v)| !v.is_zero());
        Ok(())
    }

    /// `[left, right]` as `(label, coeff)` pairs, `None` if unknown.
    pub fn get(&self, left: &str, right: &str) -> Result<Option<Vec<(String, Rational)>>> {
        let key = (self.idx(left)?, self.idx(right)?);
        Ok(self.lookup(key.0, key.1).map(|t| t.iter().map(|(k, c)| (self.basis[*k].label.clone(), c.clone())).collect()))
    }

    fn lookup(&self, i: usize, j: usize) -> Option<&[(usize, Rational)]> {
        match self.entries.get(&(i, j)) {
            Some(t) => Some(t.as_slice()),
            None if self.complete => Some(&[]),
            None => None,
        }
    }

    /// A nonzero entry, in basis order, if any.
    pub fn first_nonzero(&self) -> Option<(String, String)> {
        let mut keys: Vec<&(usize, usize)> = self.entries.iter().filter(|(_, t)| !t.is_empty()).map(|(k, _)| k).collect();
        keys.sort();
        keys.first().map(|&&(i, j)| (self.basis[i].label.clone(), self.basis[j].label.clone()))
    }

    /// The zero bracket on `basis`.
    pub fn zero(basis: Vec<BasisElement>) -> Result<Self> {
        Self::new(basis, true)
    }
}

/// Label of the point-model generator in class `α`.
pub fn point_label(class: &[i64]) -> String {
    let parts: Vec<String> = class.iter().map(i64::to_string).collect();
    format!("[{}]", parts.join(","))
}

/// The point-model table on `[-w, w]^n`. Pairs whose sum leaves the window
/// have no entry.
pub fn point_table(l: &EulerLattice, s: &SignSystem, w: i64) -> Result<BracketTable> {
    let vs = l.window(w);
    let basis = vs.iter().map(|v| BasisElement { label: point_label(v), class: v.clone(), degree: 0 }).collect();
    let mut t = BracketTable::new(basis, false)?;
    let pos: HashMap<&[i64], usize> = vs.iter().enumerate().map(|(i, v)| (v.as_slice(), i)).collect();
    for (i, a) in vs.iter().enumerate() {
        for (j, b) in vs.iter().enumerate() {
            let ab = add(a, b);
            let Some(&k) = pos.get(ab.as_slice()) else { continue };
            let c = point_bracket(a, b, l, s)?;
            let terms = if c.is_zero() { Vec::new() } else { vec![(k, c)] };
            t.entries.insert((i, j), terms);
        }
    }
    Ok(t)
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TermJson {
    label: String,
    coeff: Rational,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EntryJson {
    left: String,
    right: String,
    terms: Vec<TermJson>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TableJson {
    basis: Vec<BasisElement>,
    #[serde(default)]
    complete: bool,
    brackets: Vec<EntryJson>,
}

impl Serialize for BracketTable {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut keys: Vec<&(usize, usize)> = self.entries.keys().collect();
        keys.sort();
        let brackets = keys
            .into_iter()
            .map(|&(i, j)| EntryJson {
                left: self.basis[i].label.clone(),
                right: self.basis[j].label.clone(),
                terms: self.entries[&(i, j)]
                    .iter()
                    .map(|(k, c)| TermJson { label: self.basis[*k].label.clone(), coeff: c.clone() })
                    .collect(),
            })
            .collect();
        TableJson { basis: self.basis.clone(), complete: self.complete, brackets }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for BracketTable {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = TableJson::deserialize(d)?;
        let mut t = BracketTable::new(raw.basis, raw.complete).map_err(D::Error::custom)?;
        for e in raw.brackets {
            let terms = e.terms.into_iter().map(|x| (x.label, x.coeff)).collect();
            t.set(&e.left, &e.right, terms).map_err(D::Error::custom)?;
        }
        Ok(t)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LieReport {
    pub check: String,
    pub basis_size: usize,
    pub pairs_checked: usize,
    pub pairs_skipped: usize,
    pub triples_checked: usize,
    pub triples_skipped: usize,
    pub pass: bool,
    pub antisymmetry_failures: Vec<[String; 2]>,
    pub jacobi_failures: Vec<[String; 3]>,
}

type Combo = BTreeMap<usize, Rational>;

fn add_scaled(acc: &mut Combo, terms: &[(usize, Rational)], c: &Rational) {
    for (k, v) in terms {
        let slot = acc.entry(*k).or_insert_with(Rational::zero);
        *slot += &(v * c);
    }
}

fn is_zero_combo(c: &Combo) -> bool {
    c.values().all(Rational::is_zero)
}

/// Check every structure constant against the degree law, then graded
/// antisymmetry `[x,y] = -(-1)^{|x|'|y|'}[y,x]` on pairs and the cyclic sum
/// `Σ (-1)^{|x|'|z|'} [[x,y],z]` on triples up to rotation.
pub fn verify_lie_axioms(t: &BracketTable, l: &EulerLattice) -> Result<LieReport> {
    let n = t.basis.len();
    for b in &t.basis {
        if b.class.len() != l.rank() {
            return usage(format!("class of {} has length {}, lattice rank is {}", b.label, b.class.len(), l.rank()));
        }
    }
    let mut keys: Vec<&(usize, usize)> = t.entries.keys().collect();
    keys.sort();
    for &(i, j) in keys {
        let (x, y) = (&t.basis[i], &t.basis[j]);
        let class = add(&x.class, &y.class);
        let degree = x.degree + y.degree - 2 * l.chi(&x.class, &y.class) - 2;
        for (k, _) in &t.entries[&(i, j)] {
            let z = &t.basis[*k];
            if z.class != class || z.degree != degree {
                return usage(format!(
                    "[{}, {}] has target {} of class {:?} and degree {}, expected class {:?} and degree {}",
                    x.label, y.label, z.label, z.class, z.degree, class, degree
                ));
            }
        }
    }
    let sd: Vec<i64> = t.basis.iter().map(|b| shifted_degree(l, &b.class, b.degree)).collect();
    let label = |i: usize| t.basis[i].label.clone();

    let mut report = LieReport {
        check: "lie_axioms".into(),
        basis_size: n,
        pairs_checked: 0,
        pairs_skipped: 0,
        triples_checked: 0,
        triples_skipped: 0,
        pass: true,
        antisymmetry_failures: Vec::new(),
        jacobi_failures: Vec::new(),
    };
    for i in 0..n {
        for j in i..n {
            let (Some(xy), Some(yx)) = (t.lookup(i, j), t.lookup(j, i)) else {
                report.pairs_skipped += 1;
                continue;
            };
            report.pairs_checked += 1;
            let mut acc = Combo::new();
            add_scaled(&mut acc, xy, &Rational::one());
            add_scaled(&mut acc, yx, &Rational::from(sign(sd[i] * sd[j])));
            if !is_zero_combo(&acc) {
                report.pass = false;
                if report.antisymmetry_failures.len() < MAX_WITNESSES {
                    report.antisymmetry_failures.push([label(i), label(j)]);
                }
            }
        }
    }

    // [[x,y],z] as a combination, or None if an entry it needs is unknown.
    let dense: Vec<Option<&[(usize, Rational)]>> = (0..n * n).map(|p| t.lookup(p / n, p % n)).collect();
    let nested = |x: usize, y: usize, z: usize| -> Option<Combo> {
        let mut acc = Combo::new();
        for (k, c) in dense[x * n + y]? {
            add_scaled(&mut acc, dense[k * n + z]?, c);
        }
        Some(acc)
    };
    let per_x: Vec<(usize, usize, Vec<[String; 3]>)> = (0..n)
        .into_par_iter()
        .map(|x| {
            let (mut checked, mut skipped, mut fails) = (0, 0, Vec::new());
            // the cyclic sum is invariant under rotation, so x is the smallest index.
            for y in x..n {
                for z in x..n {
                    let terms = [(x, y, z), (y, z, x), (z, x, y)];
                    let mut acc = Combo::new();
                    let mut known = true;
                    for &(a, b, c) in &terms {
                        match nested(a, b, c) {
                            Some(v) => {
                                let s = Rational::from(sign(sd[a] * sd[c]));
                                for (k, val) in v {
                                    *acc.entry(k).or_insert_with(Rational::zero) += &(&val * &s);
                                }
                            }
                            None => {
                                known = false;
                                break;
                            }
                        }
                    }
                    if !known {
                        skipped += 1;
                        continue;
                    }
                    checked += 1;
                    if !is_zero_combo(&acc) && fails.len() < MAX_WITNESSES {
                        fails.push([label(x), label(y), label(z)]);
                    }
                }
            }
            (checked, skipped, fails)
        })
        .collect();
    for (c, s, f) in per_x {
        report.triples_checked += c;
        report.triples_skipped += s;
        if !f.is_empty() {
            report.pass = false;
        }
        let room = MAX_WITNESSES.saturating_sub(report.jacobi_failures.len());
        report.jacobi_failures.extend(f.into_iter().take(room));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lattice(g: &[&[i64]]) -> EulerLattice {
        EulerLattice::new(g.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn construction_examples() {
        let l = lattice(&[&[0, -1], &[-1, 0]]);
        let s = construct_sign_q(&l);
        assert_eq!(s, SignSystem::Bilinear(vec![vec![0, 1], vec![0, 0]]));
        assert_eq!(s.sign(&[1, 0], &[0, 1]).unwrap(), -1);
        assert_eq!(s.sign(&[0, 1], &[1, 0]).unwrap(), 1);
        assert!(verify_sign_axioms(&s, &l, 2).unwrap().pass);
        let l = lattice(&[&[2]]);
        assert_eq!(construct_sign_q(&l), SignSystem::Bilinear(vec![vec![0]]));
        assert!(verify_sign_axioms(&construct_sign_q(&l), &l, 3).unwrap().pass);
    }

    #[test]
    fn trivial_signs_fail_when_parity_is_odd() {
        let l = lattice(&[&[0, -1], &[-1, 0]]);
        let rep = verify_sign_axioms(&SignSystem::trivial(2), &l, 1).unwrap();
        assert!(!rep.pass);
        assert_eq!(rep.failures[0].axiom, "symmetry");
        assert!(verify_sign_axioms(&SignSystem::trivial(1), &lattice(&[&[0]]), 2).unwrap().pass);
    }

    #[test]
    fn table_gap_is_usage_error() {
        let l = lattice(&[&[1]]);
        let t = construct_sign_q(&l).tabulate(1, 1).unwrap();
        assert!(matches!(verify_sign_axioms(&t, &l, 1), Err(Error::Usage(_))));
        let t = construct_sign_q(&l).tabulate(1, 2).unwrap();
        assert!(verify_sign_axioms(&t, &l, 1).unwrap().pass);
    }

    #[test]
    fn point_model() {
        let l = lattice(&[&[0, -1], &[-1, 0]]);
        let s = construct_sign_q(&l);
        assert_eq!(point_bracket(&[1, 0], &[0, 1], &l, &s).unwrap(), Rational::from(-1));
        assert!(point_bracket(&[1, 0], &[1, 0], &l, &s).unwrap().is_zero());
        let mut t = point_table(&l, &s, 2).unwrap();
        let rep = verify_lie_axioms(&t, &l).unwrap();
        assert!(rep.antisymmetry_failures.is_empty());
        // only [[z,x],y] survives here: χ(x,y) = -2 and χ(y,z) = 1.
        assert!(rep.jacobi_failures.contains(&["[-2,1]".into(), "[0,-1]".into(), "[1,0]".into()]));
        t.scale_entry("[1,0]", "[0,1]", &Rational::from(-1)).unwrap();
        let rep = verify_lie_axioms(&t, &l).unwrap();
        assert!(!rep.pass);
        assert!(rep.antisymmetry_failures.contains(&["[0,1]".into(), "[1,0]".into()]));
    }

    #[test]
    fn degree_law_violation_is_usage_error() {
        let l = lattice(&[&[0]]);
        let basis = vec![
            BasisElement { label: "a".into(), class: vec![1], degree: 0 },
            BasisElement { label: "b".into(), class: vec![2], degree: 0 },
        ];
        let mut t = BracketTable::new(basis, true).unwrap();
        t.set("a", "a", vec![("b".into(), Rational::one())]).unwrap();
        assert!(matches!(verify_lie_axioms(&t, &l), Err(Error::Usage(_))));
    }
}
