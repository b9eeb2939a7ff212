//! Smith normal form, over the integers and over the local rings `Z/p^e`.

#![allow(clippy::needless_range_loop)]

/// Invariant factors of `Z^generators / ⟨relations⟩`, each relation being a
/// row of length `generators`. Entries equal to 0 stand for free summands;
/// units are dropped.
pub fn integer_invariant_factors(relations: &[Vec<i128>], generators: usize) -> Vec<u64> {
    // Work on the transpose so that columns are relations: coker(Z^r -> Z^g).
    let rows = generators;
    let cols = relations.len();
    let mut m = vec![vec![0i128; cols]; rows];
    for (j, rel) in relations.iter().enumerate() {
        assert_eq!(rel.len(), generators, "relation length must match generator count");
        for (i, &x) in rel.iter().enumerate() {
            m[i][j] = x;
        }
    }
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // Smallest nonzero entry in the trailing block.
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if m[i][j] != 0 && best.is_none_or(|(bi, bj)| m[i][j].abs() < m[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        m.swap(t, bi);
        for row in m.iter_mut() {
            row.swap(t, bj);
        }
        loop {
            let piv = m[t][t];
            let mut dirty = false;
            for i in t + 1..rows {
                let q = m[i][t].div_euclid(piv);
                if q != 0 {
                    for j in t..cols {
                        m[i][j] -= q * m[t][j];
                    }
                }
                if m[i][t] != 0 {
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                let q = m[t][j].div_euclid(piv);
                if q != 0 {
                    for row in m.iter_mut().skip(t) {
                        row[j] -= q * row[t];
                    }
                }
                if m[t][j] != 0 {
                    dirty = true;
                }
            }
            if !dirty {
                // Pivot must divide the rest of the block.
                let bad = (t + 1..rows)
                    .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                    .find(|&(i, j)| m[i][j] % piv != 0);
                match bad {
                    None => break,
                    Some((i, _)) => {
                        for j in t..cols {
                            let x = m[i][j];
                            m[t][j] += x;
                        }
                        continue;
                    }
                }
            }
            // Move the smallest nonzero entry of row t / column t to the pivot.
            let mut best = (t, t);
            for i in t..rows {
                if m[i][t] != 0 && m[i][t].abs() < m[best.0][best.1].abs() {
                    best = (i, t);
                }
            }
            for j in t..cols {
                if m[t][j] != 0 && m[t][j].abs() < m[best.0][best.1].abs() {
                    best = (t, j);
                }
            }
            m.swap(t, best.0);
            for row in m.iter_mut() {
                row.swap(t, best.1);
            }
        }
        diag.push(m[t][t].unsigned_abs() as u64);
        t += 1;
    }
    let mut out: Vec<u64> = diag.into_iter().filter(|&d| d != 1).collect();
    out.extend(std::iter::repeat_n(0, rows - t));
    out
}

/// Arithmetic in `Z/p^e`.
#[derive(Clone, Copy, Debug)]
pub struct LocalRing {
    pub p: u64,
    pub e: u32,
    pub q: u64,
}

impl LocalRing {
    pub fn new(p: u64, e: u32) -> Self {
        LocalRing { p, e, q: p.pow(e) }
    }

    /// p-adic valuation, with `e` for zero.
    pub fn val(&self, mut x: u64) -> u32 {
        x %= self.q;
        if x == 0 {
            return self.e;
        }
        let mut v = 0;
        while x.is_multiple_of(self.p) {
            x /= self.p;
            v += 1;
        }
        v
    }

    pub fn inv_unit(&self, u: u64) -> u64 {
        // Extended Euclid on (u, q).
        let (mut t, mut new_t) = (0i128, 1i128);
        let (mut r, mut new_r) = (self.q as i128, (u % self.q) as i128);
        while new_r != 0 {
            let quo = r / new_r;
            (t, new_t) = (new_t, t - quo * new_t);
            (r, new_r) = (new_r, r - quo * new_r);
        }
        debug_assert_eq!(r, 1, "not a unit");
        t.rem_euclid(self.q as i128) as u64
    }

    /// `x = u p^v` with `u` a unit; returns `(u, v)`. `x` must be nonzero.
    pub fn split(&self, x: u64) -> (u64, u32) {
        let v = self.val(x);
        (x / self.p.pow(v), v)
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        (a * b) % self.q
    }

    /// `dst -= f * src` entrywise.
    #[inline]
    pub fn axpy_sub(&self, dst: &mut [u64], f: u64, src: &[u64]) {
        if f == 0 {
            return;
        }
        let q = self.q;
        let g = q - f % q;
        for (d, &s) in dst.iter_mut().zip(src) {
            if s != 0 {
                *d = (*d + g * s) % q;
            }
        }
    }
}

/// Row set spanning the same submodule of `(Z/p^e)^n` as the rows inserted,
/// kept in echelon shape (one row per leading column).
pub struct Echelon {
    ring: LocalRing,
    width: usize,
    lead: Vec<Option<usize>>,
    rows: Vec<Vec<u64>>,
}

impl Echelon {
    pub fn new(ring: LocalRing, width: usize) -> Self {
        Echelon { ring, width, lead: vec![None; width], rows: Vec::new() }
    }

    pub fn insert(&mut self, mut r: Vec<u64>) {
        debug_assert_eq!(r.len(), self.width);
        let ring = self.ring;
        let mut j = 0;
        loop {
            while j < self.width && r[j] == 0 {
                j += 1;
            }
            if j == self.width {
                return;
            }
            let (u, v) = ring.split(r[j]);
            match self.lead[j] {
                None => {
                    let ui = ring.inv_unit(u);
                    for x in r[j..].iter_mut() {
                        *x = ring.mul(*x, ui);
                    }
                    self.lead[j] = Some(self.rows.len());
                    self.rows.push(r);
                    return;
                }
                Some(bi) => {
                    let vb = ring.val(self.rows[bi][j]);
                    if v >= vb {
                        let f = ring.mul(u, ring.p.pow(v - vb));
                        let (head, tail) = (&mut r[j..], &self.rows[bi][j..]);
                        ring.axpy_sub(head, f, tail);
                        j += 1;
                    } else {
                        let ui = ring.inv_unit(u);
                        for x in r[j..].iter_mut() {
                            *x = ring.mul(*x, ui);
                        }
                        r = std::mem::replace(&mut self.rows[bi], r);
                    }
                }
            }
        }
    }

    pub fn into_rows(self) -> Vec<Vec<u64>> {
        self.rows
    }
}

/// Result of a local Smith reduction `D = U·M·V`.
pub struct LocalSnf {
    /// Valuations of the nonzero diagonal entries, nondecreasing.
    pub diag: Vec<u32>,
    /// Column transform `V` (n × n), when requested.
    pub v: Option<Vec<Vec<u64>>>,
    /// `V^{-1}`, when requested.
    pub v_inv: Option<Vec<Vec<u64>>>,
}

/// Smith reduction of `m` (rows of width `n`) over `Z/p^e`.
pub fn local_snf(ring: LocalRing, mut m: Vec<Vec<u64>>, n: usize, track: bool) -> LocalSnf {
    let rows = m.len();
    let identity = || {
        (0..n)
            .map(|i| {
                let mut r = vec![0u64; n];
                r[i] = 1;
                r
            })
            .collect::<Vec<_>>()
    };
    // V is stored by columns so that column operations are row operations here.
    let mut v_cols = track.then(identity);
    let mut v_inv = track.then(identity);
    let mut diag = Vec::new();
    for t in 0..rows.min(n) {
        let mut best: Option<(usize, usize, u32)> = None;
        'search: for (i, row) in m.iter().enumerate().skip(t) {
            for (j, &x) in row.iter().enumerate().skip(t) {
                if x != 0 {
                    let vx = ring.val(x);
                    if best.is_none_or(|b| vx < b.2) {
                        best = Some((i, j, vx));
                        if vx == 0 {
                            break 'search;
                        }
                    }
                }
            }
        }
        let Some((bi, bj, pv)) = best else { break };
        m.swap(t, bi);
        if bj != t {
            for row in m.iter_mut() {
                row.swap(t, bj);
            }
            if let Some(vc) = v_cols.as_mut() {
                vc.swap(t, bj);
            }
            if let Some(vi) = v_inv.as_mut() {
                vi.swap(t, bj);
            }
        }
        let (u, _) = ring.split(m[t][t]);
        let ui = ring.inv_unit(u);
        for x in m[t].iter_mut() {
            *x = ring.mul(*x, ui);
        }
        let pp = ring.p.pow(pv);
        let pivot_row = m[t].clone();
        for row in m.iter_mut().skip(t + 1) {
            if row[t] != 0 {
                let f = row[t] / pp;
                ring.axpy_sub(&mut row[t..], f, &pivot_row[t..]);
            }
        }
        for j in t + 1..n {
            let x = m[t][j];
            if x == 0 {
                continue;
            }
            let f = x / pp;
            m[t][j] = 0;
            // col_j -= f col_t in V; row_t += f row_j in V^{-1}.
            if let Some(vc) = v_cols.as_mut() {
                let (lo, hi) = vc.split_at_mut(j);
                ring.axpy_sub(&mut hi[0], f, &lo[t]);
            }
            if let Some(vi) = v_inv.as_mut() {
                let (lo, hi) = vi.split_at_mut(j);
                let neg = (ring.q - f % ring.q) % ring.q;
                ring.axpy_sub(&mut lo[t], neg, &hi[0]);
            }
        }
        diag.push(pv);
    }
    // Convert V from column storage to row-major.
    let v = v_cols.map(|cols| {
        let mut out = vec![vec![0u64; n]; n];
        for (j, col) in cols.iter().enumerate() {
            for (i, &x) in col.iter().enumerate() {
                out[i][j] = x;
            }
        }
        out
    });
    LocalSnf { diag, v, v_inv }
}

/// Elementary-divisor exponents of `(Z/p^e)^k / ⟨relations⟩` where the
/// generators have the given orders `p^orders[i]`.
pub fn local_quotient(ring: LocalRing, orders: &[u32], relations: &[Vec<u64>]) -> Vec<u32> {
    let k = orders.len();
    let mut rows: Vec<Vec<u64>> = Vec::with_capacity(k + relations.len());
    for (i, &o) in orders.iter().enumerate() {
        if o < ring.e {
            let mut r = vec![0u64; k];
            r[i] = ring.p.pow(o);
            rows.push(r);
        }
    }
    rows.extend(relations.iter().cloned());
    let snf = local_snf(ring, rows, k, false);
    let mut exps: Vec<u32> = snf.diag.iter().copied().filter(|&d| d > 0).collect();
    exps.extend(std::iter::repeat_n(ring.e, k - snf.diag.len()));
    exps.sort_unstable();
    exps
}
