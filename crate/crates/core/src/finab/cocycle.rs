//! Normalized symmetric 2-cocycles and the cocycle/coboundary modules.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

use super::snf::{local_quotient, local_snf, Echelon, LocalRing};
use super::{FinAb, FinAbError, MAX_GROUP_ORDER, MAX_PRODUCT_ORDER};
use crate::expr::factorize;

/// `c: G × G → A`, stored row-major over lexicographically enumerated
/// elements; entries are element indices of `A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cocycle2 {
    g: FinAb,
    a: FinAb,
    table: Vec<usize>,
}

impl Cocycle2 {
    pub fn new(g: FinAb, a: FinAb, table: Vec<usize>) -> Result<Self, FinAbError> {
        let n = g.order() as usize;
        if table.len() != n * n {
            return Err(FinAbError::TableShape { got: table.len(), expected: n * n });
        }
        if let Some(&bad) = table.iter().find(|&&v| v as u64 >= a.order()) {
            return Err(FinAbError::NotACocycle { identity: "range", at: format!("value index {bad}") });
        }
        Ok(Cocycle2 { g, a, table })
    }

    pub fn zero(g: FinAb, a: FinAb) -> Self {
        let n = g.order() as usize;
        Cocycle2 { g, a, table: vec![0; n * n] }
    }

    pub fn from_fn(g: FinAb, a: FinAb, f: impl Fn(usize, usize) -> usize) -> Self {
        let n = g.order() as usize;
        let table = (0..n * n).map(|i| f(i / n, i % n)).collect();
        Cocycle2 { g, a, table }
    }

    /// `δf(x, y) = f(x) + f(y) − f(x + y)`.
    pub fn coboundary(g: FinAb, a: FinAb, f: &[usize]) -> Self {
        let gt = g.add_table();
        let n = g.order() as usize;
        let table = (0..n * n)
            .map(|i| {
                let (x, y) = (i / n, i % n);
                a.add(a.add(f[x], f[y]), a.neg(f[gt[x * n + y]]))
            })
            .collect();
        Cocycle2 { g, a, table }
    }

    pub fn g(&self) -> &FinAb {
        &self.g
    }

    pub fn a(&self) -> &FinAb {
        &self.a
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn get(&self, x: usize, y: usize) -> usize {
        self.table[x * self.g.order() as usize + y]
    }

    pub fn add(&self, other: &Cocycle2) -> Cocycle2 {
        let table = self.table.iter().zip(&other.table).map(|(&u, &v)| self.a.add(u, v)).collect();
        Cocycle2 { g: self.g.clone(), a: self.a.clone(), table }
    }

    /// Checks normalization, symmetry and the cocycle identity, reporting the
    /// first failure in that order.
    pub fn check(&self) -> Result<(), FinAbError> {
        let n = self.g.order() as usize;
        let gt = self.g.add_table();
        for x in 0..n {
            if self.get(x, 0) != 0 || self.get(0, x) != 0 {
                return Err(FinAbError::NotACocycle {
                    identity: "c(x,0) = 0",
                    at: format!("x={:?}", self.g.coords(x)),
                });
            }
        }
        for x in 0..n {
            for y in x + 1..n {
                if self.get(x, y) != self.get(y, x) {
                    return Err(FinAbError::NotACocycle {
                        identity: "c(x,y) = c(y,x)",
                        at: format!("x={:?}, y={:?}", self.g.coords(x), self.g.coords(y)),
                    });
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                let xy = gt[x * n + y];
                for z in 0..n {
                    let yz = gt[y * n + z];
                    let lhs = self.a.add(self.get(x, y), self.get(xy, z));
                    let rhs = self.a.add(self.get(x, yz), self.get(y, z));
                    if lhs != rhs {
                        return Err(FinAbError::NotACocycle {
                            identity: "c(x,y) + c(x+y,z) = c(x,y+z) + c(y,z)",
                            at: format!(
                                "x={:?}, y={:?}, z={:?}",
                                self.g.coords(x),
                                self.g.coords(y),
                                self.g.coords(z)
                            ),
                        });
                    }
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct CocycleGroup {
    /// Normalized symmetric cocycles `Z²`.
    pub cocycles: FinAb,
    /// Coboundaries `B²`.
    pub coboundaries: FinAb,
    pub quotient: FinAb,
    /// Generators of `Z²`.
    pub basis: Vec<Cocycle2>,
}

/// Unknowns `c(x, y)` for nonzero `x <= y`.
struct Vars {
    n: usize,
    index: Vec<Option<usize>>,
    pairs: Vec<(usize, usize)>,
}

impl Vars {
    fn new(n: usize) -> Self {
        let mut index = vec![None; n * n];
        let mut pairs = Vec::new();
        for x in 1..n {
            for y in x..n {
                index[x * n + y] = Some(pairs.len());
                index[y * n + x] = Some(pairs.len());
                pairs.push((x, y));
            }
        }
        Vars { n, index, pairs }
    }

    fn get(&self, x: usize, y: usize) -> Option<usize> {
        self.index[x * self.n + y]
    }
}

fn check_bounds(g: &FinAb, a: &FinAb) -> Result<(), FinAbError> {
    if g.order() > MAX_GROUP_ORDER {
        return Err(FinAbError::SizeBound(format!("|G| = {} exceeds {MAX_GROUP_ORDER}", g.order())));
    }
    if g.order().saturating_mul(a.order()) > MAX_PRODUCT_ORDER {
        return Err(FinAbError::SizeBound(format!(
            "|G|·|A| = {} exceeds {MAX_PRODUCT_ORDER}",
            g.order().saturating_mul(a.order())
        )));
    }
    Ok(())
}

/// `Z²`, `B²` and `Z²/B²` as abstract groups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CocycleModules {
    pub cocycles: FinAb,
    pub coboundaries: FinAb,
    pub quotient: FinAb,
}

/// Kernel and coboundary data of one `G` over one ring `Z/p^e`.
struct LocalPart {
    /// Kernel generators in base coordinates with their order exponents.
    gens: Vec<(Vec<u64>, u32)>,
    coboundaries: Vec<u32>,
    quotient: Vec<u32>,
}

type SparseRow = Vec<(usize, i64)>;

/// The cocycle system of a fixed `G`, reduced once over the integers and
/// then solved over each ring `Z/p^e` a coefficient group asks for.
///
/// Unknowns `c(x, w)` with neither argument a generator are eliminated over
/// the integers: along a breadth-first tree `w = y + s` the identity
/// `c(x, y) + c(x+y, s) = c(y, s) + c(x, w)` has a unit coefficient on
/// `c(x, w)`, and every other unknown in it has a smaller depth sum. What
/// remains are the unknowns `c(x, s)` for generators `s` and the identities
/// rewritten in them. A second integer pass then solves for any unknown
/// that still carries a `±1` coefficient; both passes are unimodular, so the
/// reduced system has the same solutions over every `Z/p^e`.
pub struct CocycleSolver {
    g: FinAb,
    n: usize,
    gt: Vec<usize>,
    vars: Vars,
    /// Var index of each base unknown.
    base: Vec<usize>,
    /// Every unknown as an integer combination of base unknowns.
    reps: Vec<SparseRow>,
    /// Identities in base coordinates, deduplicated up to sign.
    equations: Vec<SparseRow>,
    cache: HashMap<(u64, u32), LocalPart>,
}

impl CocycleSolver {
    pub fn new(g: &FinAb) -> Result<Self, FinAbError> {
        if g.order() > MAX_GROUP_ORDER {
            return Err(FinAbError::SizeBound(format!("|G| = {} exceeds {MAX_GROUP_ORDER}", g.order())));
        }
        let n = g.order() as usize;
        let gt = g.add_table();
        let vars = Vars::new(n);
        let width = vars.pairs.len();
        let gens = g.generators();
        let mut is_gen = vec![false; n];
        for &s in &gens {
            is_gen[s] = true;
        }

        let mut depth = vec![usize::MAX; n];
        let mut pred = vec![(0usize, 0usize); n];
        depth[0] = 0;
        let mut queue = VecDeque::from([0usize]);
        while let Some(u) = queue.pop_front() {
            for &s in &gens {
                let w = gt[u * n + s];
                if depth[w] == usize::MAX {
                    depth[w] = depth[u] + 1;
                    pred[w] = (u, s);
                    queue.push_back(w);
                }
            }
        }

        let mut base = Vec::new();
        let mut reps: Vec<SparseRow> = vec![Vec::new(); width];
        for (i, &(x, y)) in vars.pairs.iter().enumerate() {
            if is_gen[x] || is_gen[y] {
                reps[i] = vec![(base.len(), 1)];
                base.push(i);
            }
        }
        let mut order: Vec<usize> = (0..width).filter(|&i| reps[i].is_empty()).collect();
        order.sort_by_key(|&i| depth[vars.pairs[i].0] + depth[vars.pairs[i].1]);
        let mut acc = vec![0i64; base.len()];
        let mut combine = |terms: &[(usize, i64)], reps: &[SparseRow]| -> SparseRow {
            let mut touched = Vec::new();
            for &(var, c) in terms {
                for &(b, k) in &reps[var] {
                    if acc[b] == 0 {
                        touched.push(b);
                    }
                    acc[b] += c * k;
                }
            }
            touched.sort_unstable();
            touched.dedup();
            let row: SparseRow = touched.iter().map(|&b| (b, acc[b])).filter(|&(_, c)| c != 0).collect();
            for b in touched {
                acc[b] = 0;
            }
            row
        };
        for i in order {
            let (x, y) = vars.pairs[i];
            let (u, w) = if (depth[y], y) >= (depth[x], x) { (x, y) } else { (y, x) };
            let (yw, s) = pred[w];
            let mut terms = vec![(vars.get(u, yw).expect("nonzero pair"), 1), (vars.get(yw, s).expect("nonzero pair"), -1)];
            if let Some(v) = vars.get(gt[u * n + yw], s) {
                terms.push((v, 1));
            }
            reps[i] = combine(&terms, &reps);
        }

        let mut seen = HashSet::new();
        let mut equations = Vec::new();
        for &s in &gens {
            for x in 1..n {
                for y in 1..n {
                    let mut terms = Vec::with_capacity(4);
                    let cells = [(x, y, 1), (gt[x * n + y], s, 1), (x, gt[y * n + s], -1), (y, s, -1)];
                    for (u, v, c) in cells {
                        if let Some(i) = vars.get(u, v) {
                            terms.push((i, c));
                        }
                    }
                    let mut row = combine(&terms, &reps);
                    if row.first().is_some_and(|&(_, c)| c < 0) {
                        for entry in row.iter_mut() {
                            entry.1 = -entry.1;
                        }
                    }
                    if !row.is_empty() && seen.insert(row.clone()) {
                        equations.push(row);
                    }
                }
            }
        }
        let (free, reps, equations) = eliminate_units(base, reps, equations);
        Ok(CocycleSolver { g: g.clone(), n, gt, vars, base: free, reps, equations, cache: HashMap::new() })
    }

    pub fn g(&self) -> &FinAb {
        &self.g
    }

    /// Number of unknowns left after the integer elimination.
    pub fn base_width(&self) -> usize {
        self.base.len()
    }

    /// Largest absolute coefficient in the reduced system.
    pub fn max_coefficient(&self) -> i64 {
        self.reps.iter().chain(&self.equations).flatten().map(|&(_, c)| c.abs()).max().unwrap_or(0)
    }

    fn local(&mut self, p: u64, e: u32) -> &LocalPart {
        if !self.cache.contains_key(&(p, e)) {
            let part = self.solve_local(p, e);
            self.cache.insert((p, e), part);
        }
        &self.cache[&(p, e)]
    }

    fn solve_local(&self, p: u64, e: u32) -> LocalPart {
        let ring = LocalRing::new(p, e);
        let q = ring.q;
        let width = self.base.len();
        let mut ech = Echelon::new(ring, width);
        for eq in &self.equations {
            let mut row = vec![0u64; width];
            for &(i, c) in eq {
                row[i] = c.rem_euclid(q as i64) as u64;
            }
            ech.insert(row);
        }
        let snf = local_snf(ring, ech.into_rows(), width, true);
        let v = snf.v.expect("tracked");
        let v_inv = snf.v_inv.expect("tracked");
        let rank = snf.diag.len();

        // Kernel generators: (column of V, order exponent).
        let mut cols: Vec<(usize, u32)> = Vec::new();
        for (t, &d) in snf.diag.iter().enumerate() {
            if d > 0 {
                cols.push((t, d));
            }
        }
        cols.extend((rank..width).map(|t| (t, e)));
        let orders: Vec<u32> = cols.iter().map(|&(_, o)| o).collect();
        let gens = cols
            .iter()
            .map(|&(t, o)| {
                let mult = p.pow(e - o);
                ((0..width).map(|i| (v[i][t] * mult) % q).collect(), o)
            })
            .collect();

        // Coboundaries of the point masses, in base and kernel coordinates.
        let n = self.n;
        let mut cob_rows = Vec::with_capacity(n - 1);
        let mut relations = Vec::with_capacity(n - 1);
        for h in 1..n {
            let w: Vec<u64> = self
                .base
                .iter()
                .map(|&i| {
                    let (x, y) = self.vars.pairs[i];
                    let c = i64::from(x == h) + i64::from(y == h) - i64::from(self.gt[x * n + y] == h);
                    c.rem_euclid(q as i64) as u64
                })
                .collect();
            let z: Vec<u64> = (0..width)
                .map(|t| v_inv[t].iter().zip(&w).fold(0u64, |acc, (&a, &b)| (acc + a * b) % q))
                .collect();
            debug_assert!(snf.diag.iter().enumerate().all(|(t, &d)| z[t].is_multiple_of(p.pow(e - d))));
            relations.push(cols.iter().map(|&(t, o)| (z[t] / p.pow(e - o)) % p.pow(o)).collect::<Vec<u64>>());
            cob_rows.push(w);
        }
        let b = local_snf(ring, cob_rows, width, false);
        LocalPart {
            gens,
            coboundaries: b.diag.iter().filter(|&&d| d < e).map(|&d| e - d).collect(),
            quotient: local_quotient(ring, &orders, &relations),
        }
    }

    fn check_coefficients(&self, a: &FinAb) -> Result<(), FinAbError> {
        let product = self.g.order().saturating_mul(a.order());
        if product > MAX_PRODUCT_ORDER {
            return Err(FinAbError::SizeBound(format!("|G|·|A| = {product} exceeds {MAX_PRODUCT_ORDER}")));
        }
        Ok(())
    }

    /// The three modules for coefficients `a`, without generators.
    pub fn modules(&mut self, a: &FinAb) -> Result<CocycleModules, FinAbError> {
        self.check_coefficients(a)?;
        let (mut z, mut b, mut q) = (Vec::new(), Vec::new(), Vec::new());
        if self.n > 1 {
            for &m in a.factors() {
                for (p, e) in factorize(m) {
                    let part = self.local(p, e);
                    z.extend(part.gens.iter().map(|&(_, o)| p.pow(o)));
                    b.extend(part.coboundaries.iter().map(|&d| p.pow(d)));
                    q.extend(part.quotient.iter().map(|&d| p.pow(d)));
                }
            }
        }
        Ok(CocycleModules { cocycles: FinAb::new(z), coboundaries: FinAb::new(b), quotient: FinAb::new(q) })
    }

    /// The modules together with explicit generators of `Z²`.
    pub fn solve(&mut self, a: &FinAb) -> Result<CocycleGroup, FinAbError> {
        let m = self.modules(a)?;
        let mut basis = Vec::new();
        if self.n > 1 {
            let n = self.n;
            for (j, &order) in a.factors().iter().enumerate() {
                for (p, e) in factorize(order) {
                    let q = p.pow(e);
                    let scale = order / q;
                    let gens: Vec<Vec<u64>> = self.local(p, e).gens.iter().map(|(c, _)| c.clone()).collect();
                    for col in gens {
                        let table = (0..n * n)
                            .map(|idx| {
                                let val = self.vars.get(idx / n, idx % n).map_or(0, |i| {
                                    let s = self.reps[i].iter().fold(0i64, |acc, &(b, c)| {
                                        (acc + c * col[b] as i64).rem_euclid(q as i64)
                                    });
                                    s as u64
                                });
                                let mut coords = vec![0u64; a.factors().len()];
                                coords[j] = (val * scale) % order;
                                a.index(&coords)
                            })
                            .collect();
                        basis.push(Cocycle2 { g: self.g.clone(), a: a.clone(), table });
                    }
                }
            }
        }
        Ok(CocycleGroup { cocycles: m.cocycles, coboundaries: m.coboundaries, quotient: m.quotient, basis })
    }
}

/// `Σ k·rows[u]` over the terms `(u, k)` of `terms`, or `None` on overflow.
fn combine_checked(terms: &[(usize, i64)], row_of: impl Fn(usize) -> Option<SparseRow>) -> Option<SparseRow> {
    let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
    for &(u, k) in terms {
        match row_of(u) {
            Some(e) => {
                for (v, c) in e {
                    let slot = acc.entry(v).or_insert(0);
                    *slot = slot.checked_add(k.checked_mul(c)?)?;
                }
            }
            None => {
                let slot = acc.entry(u).or_insert(0);
                *slot = slot.checked_add(k)?;
            }
        }
    }
    Some(acc.into_iter().filter(|&(_, c)| c != 0).collect())
}

/// Gauss-Jordan over the integers on unit pivots only: any unknown with a
/// `±1` coefficient in some identity is solved for and substituted away.
/// Returns the surviving base unknowns (as var indices), the reps rewritten
/// in them and the remaining identities.
fn eliminate_units(
    base: Vec<usize>,
    reps: Vec<SparseRow>,
    equations: Vec<SparseRow>,
) -> (Vec<usize>, Vec<SparseRow>, Vec<SparseRow>) {
    let mut solved: Vec<Option<SparseRow>> = vec![None; base.len()];
    let mut pending = equations;
    loop {
        let mut progress = false;
        let mut next = Vec::new();
        for row in pending {
            let Some(row) = combine_checked(&row, |u| solved[u].clone()) else {
                next.push(row);
                continue;
            };
            if row.is_empty() {
                continue;
            }
            let Some(&(v, c)) = row.iter().find(|&&(_, c)| c.abs() == 1) else {
                next.push(row);
                continue;
            };
            let expr: SparseRow = row.iter().filter(|&&(u, _)| u != v).map(|&(u, k)| (u, -c * k)).collect();
            let mut updated = Vec::new();
            for (w, e) in solved.iter().enumerate() {
                if let Some(e) = e {
                    if e.iter().any(|&(u, _)| u == v) {
                        match combine_checked(e, |u| (u == v).then(|| expr.clone())) {
                            Some(ne) => updated.push((w, ne)),
                            None => break,
                        }
                    }
                }
            }
            let touching = solved.iter().flatten().filter(|e| e.iter().any(|&(u, _)| u == v)).count();
            if updated.len() < touching {
                next.push(row);
                continue;
            }
            for (w, ne) in updated {
                solved[w] = Some(ne);
            }
            solved[v] = Some(expr);
            progress = true;
        }
        pending = next;
        if !progress {
            break;
        }
    }

    let mut renumber = vec![None; base.len()];
    let mut free = Vec::new();
    for (b, s) in solved.iter().enumerate() {
        if s.is_none() {
            renumber[b] = Some(free.len());
            free.push(base[b]);
        }
    }
    let rewrite = |row: &SparseRow| -> SparseRow {
        combine_checked(row, |u| solved[u].clone())
            .expect("substitution succeeded when the pivot was taken")
            .into_iter()
            .map(|(u, c)| (renumber[u].expect("free unknown"), c))
            .collect()
    };
    let reps = reps.iter().map(rewrite).collect();
    let mut seen = HashSet::new();
    let mut equations = Vec::new();
    for row in &pending {
        let mut row = rewrite(row);
        if row.first().is_some_and(|&(_, c)| c < 0) {
            for entry in row.iter_mut() {
                entry.1 = -entry.1;
            }
        }
        if !row.is_empty() && seen.insert(row.clone()) {
            equations.push(row);
        }
    }
    (free, reps, equations)
}

/// Cocycles, coboundaries and their quotient by exact linear algebra.
///
/// `A` splits into primary cyclic summands `Z/p^e` and each is handled over
/// the ring `Z/p^e`. The cocycle identity is imposed only for `z` among the
/// generators of `G`: in the twisted group the triples it makes associative
/// are closed under addition in `z`, and `(0, s)` for generators `s`
/// together with `A × {0}` generate everything.
pub fn cocycle_group(g: &FinAb, a: &FinAb) -> Result<CocycleGroup, FinAbError> {
    check_bounds(g, a)?;
    CocycleSolver::new(g)?.solve(a)
}

/// Every normalized symmetric cocycle, by backtracking over `c(x, y)` for
/// nonzero `x <= y` with the identity checked over all triples.
pub fn enumerate_cocycles(g: &FinAb, a: &FinAb) -> Vec<Cocycle2> {
    let n = g.order() as usize;
    let na = a.order() as usize;
    let gt = g.add_table();
    let at = a.add_table();
    let vars = Vars::new(n);
    let nv = vars.pairs.len();
    if nv == 0 {
        return vec![Cocycle2::zero(g.clone(), a.clone())];
    }
    // Constraint terms as optional var indices; attach to the last var involved.
    type Triple = [Option<usize>; 4];
    let mut attached: Vec<Vec<Triple>> = vec![Vec::new(); nv];
    for x in 1..n {
        for y in 1..n {
            for z in 1..n {
                let t = [
                    vars.get(x, y),
                    vars.get(gt[x * n + y], z),
                    vars.get(x, gt[y * n + z]),
                    vars.get(y, z),
                ];
                let last = t.iter().flatten().max().copied().expect("c(x,y) is a variable");
                attached[last].push(t);
            }
        }
    }
    let mut out = Vec::new();
    let mut vals = vec![0usize; nv];
    fn rec(
        i: usize,
        vals: &mut Vec<usize>,
        attached: &[Vec<[Option<usize>; 4]>],
        na: usize,
        at: &[usize],
        out: &mut Vec<Vec<usize>>,
    ) {
        if i == vals.len() {
            out.push(vals.clone());
            return;
        }
        let val = |vals: &Vec<usize>, o: Option<usize>| o.map_or(0, |k| vals[k]);
        for v in 0..na {
            vals[i] = v;
            let ok = attached[i].iter().all(|t| {
                let lhs = at[val(vals, t[0]) * na + val(vals, t[1])];
                let rhs = at[val(vals, t[2]) * na + val(vals, t[3])];
                lhs == rhs
            });
            if ok {
                rec(i + 1, vals, attached, na, at, out);
            }
        }
    }
    let mut raw = Vec::new();
    rec(0, &mut vals, &attached, na, &at, &mut raw);
    for assignment in raw {
        let table = (0..n * n)
            .map(|idx| vars.get(idx / n, idx % n).map_or(0, |k| assignment[k]))
            .collect();
        out.push(Cocycle2 { g: g.clone(), a: a.clone(), table });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finab::ext_finite;

    #[test]
    fn z2_with_z2_coefficients() {
        let g = FinAb::cyclic(2);
        let r = cocycle_group(&g, &g).unwrap();
        assert_eq!(r.quotient, FinAb::cyclic(2));
        assert_eq!(r.cocycles, FinAb::cyclic(2));
        assert!(r.coboundaries.is_trivial());
        assert_eq!(enumerate_cocycles(&g, &g).len(), 2);
    }

    #[test]
    fn coprime_coefficients() {
        let r = cocycle_group(&FinAb::cyclic(2), &FinAb::cyclic(3)).unwrap();
        assert!(r.quotient.is_trivial());
        assert_eq!(r.cocycles, r.coboundaries);
    }

    #[test]
    fn trivial_coefficients() {
        let r = cocycle_group(&FinAb::cyclic(5), &FinAb::trivial()).unwrap();
        assert!(r.quotient.is_trivial());
    }

    #[test]
    fn matches_formula_small() {
        for (g, a) in [
            (vec![4], vec![2]),
            (vec![2, 4], vec![4]),
            (vec![2, 2], vec![2]),
            (vec![3], vec![9]),
            (vec![6], vec![4]),
            (vec![8], vec![8]),
        ] {
            let (g, a) = (FinAb::new(g), FinAb::new(a));
            let r = cocycle_group(&g, &a).unwrap();
            assert_eq!(r.quotient, ext_finite(&g, &a), "G={g} A={a}");
            for c in &r.basis {
                c.check().unwrap();
            }
            assert_eq!(r.cocycles.order(), r.coboundaries.order() * r.quotient.order());
        }
    }

    #[test]
    fn reduction_keeps_only_the_cocycle_rank() {
        let g = FinAb::new(vec![2, 2, 2, 2, 2, 2]);
        let mut s = CocycleSolver::new(&g).unwrap();
        assert_eq!(s.base_width(), 63);
        assert!(s.max_coefficient() <= 4);
        let m = s.modules(&FinAb::cyclic(4)).unwrap();
        assert_eq!(m.quotient, ext_finite(&g, &FinAb::cyclic(4)));
        assert_eq!(s.solve(&FinAb::cyclic(2)).unwrap().quotient, m.quotient);
    }

    #[test]
    fn size_bound() {
        assert!(matches!(
            cocycle_group(&FinAb::cyclic(128), &FinAb::cyclic(2)),
            Err(FinAbError::SizeBound(_))
        ));
    }

    #[test]
    fn check_reports_first_violation() {
        let g = FinAb::cyclic(2);
        let c = Cocycle2::new(g.clone(), g.clone(), vec![0, 1, 0, 0]).unwrap();
        match c.check() {
            Err(FinAbError::NotACocycle { identity, .. }) => assert_eq!(identity, "c(x,0) = 0"),
            other => panic!("{other:?}"),
        }
        let g3 = FinAb::cyclic(3);
        let mut t = vec![0; 9];
        t[5] = 1; // c(1,2)
        let c = Cocycle2::new(g3.clone(), g3.clone(), t).unwrap();
        match c.check() {
            Err(FinAbError::NotACocycle { identity, .. }) => assert_eq!(identity, "c(x,y) = c(y,x)"),
            other => panic!("{other:?}"),
        }
    }
}
