//! The twisted group `A × G` with `(a,g) + (a',g') = (a + a' + c(g,g'), g + g')`.

use super::{Cocycle2, FinAb, FinAbError};
use crate::expr::factorize;

#[derive(Clone, Debug)]
pub struct ExtensionTable {
    g: FinAb,
    a: FinAb,
    c: Cocycle2,
    g_table: Vec<usize>,
    a_table: Vec<usize>,
    invariant_factors: FinAb,
}

impl ExtensionTable {
    pub fn order(&self) -> usize {
        (self.g.order() * self.a.order()) as usize
    }

    /// Element `(a, g)`; indices run over `A` first, then `G`.
    pub fn element(&self, a: usize, g: usize) -> usize {
        a * self.g.order() as usize + g
    }

    pub fn parts(&self, u: usize) -> (usize, usize) {
        let n = self.g.order() as usize;
        (u / n, u % n)
    }

    pub fn add(&self, u: usize, v: usize) -> usize {
        let (na, ng) = (self.a.order() as usize, self.g.order() as usize);
        let ((a1, g1), (a2, g2)) = (self.parts(u), self.parts(v));
        let a = self.a_table[self.a_table[a1 * na + a2] * na + self.c.get(g1, g2)];
        self.element(a, self.g_table[g1 * ng + g2])
    }

    pub fn projection(&self, u: usize) -> usize {
        self.parts(u).1
    }

    /// Full operation table, row-major.
    pub fn table(&self) -> Vec<usize> {
        let n = self.order();
        (0..n * n).map(|i| self.add(i / n, i % n)).collect()
    }

    pub fn invariant_factors(&self) -> &FinAb {
        &self.invariant_factors
    }

    pub fn cocycle(&self) -> &Cocycle2 {
        &self.c
    }

    /// Elementary divisors from counting solutions of `p^k u = 0`.
    fn count_structure(&self) -> FinAb {
        let n = self.order();
        let mut orders = Vec::new();
        for (p, total) in factorize(n as u64) {
            let mul_p: Vec<usize> = (0..n)
                .map(|u| (1..p).fold(u, |acc, _| self.add(acc, u)))
                .collect();
            // counts[k] = #{u : p^k u = 0}
            let mut counts = vec![1usize];
            let mut cur: Vec<usize> = (0..n).collect();
            let full = p.pow(total) as usize;
            while *counts.last().expect("nonempty") < full {
                cur = cur.iter().map(|&u| mul_p[u]).collect();
                counts.push(cur.iter().filter(|&&u| u == 0).count());
            }
            // ranks[k] = number of cyclic p-factors of order >= p^k, k >= 1.
            let log_p = |mut x: usize| {
                let mut r = 0;
                while x > 1 {
                    x /= p as usize;
                    r += 1;
                }
                r
            };
            let ranks: Vec<u32> = counts.windows(2).map(|w| log_p(w[1] / w[0])).collect();
            for k in 0..ranks.len() {
                let next = ranks.get(k + 1).copied().unwrap_or(0);
                for _ in 0..ranks[k] - next {
                    orders.push(p.pow(k as u32 + 1));
                }
            }
        }
        FinAb::new(orders)
    }
}

pub fn build_extension(g: &FinAb, a: &FinAb, c: &Cocycle2) -> Result<ExtensionTable, FinAbError> {
    if c.g() != g || c.a() != a {
        return Err(FinAbError::TableShape {
            got: c.table().len(),
            expected: (g.order() * g.order()) as usize,
        });
    }
    c.check()?;
    let mut t = ExtensionTable {
        g: g.clone(),
        a: a.clone(),
        c: c.clone(),
        g_table: g.add_table(),
        a_table: a.add_table(),
        invariant_factors: FinAb::trivial(),
    };
    t.invariant_factors = t.count_structure();
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ext(g: &FinAb, a: &FinAb, c: &Cocycle2) -> FinAb {
        build_extension(g, a, c).unwrap().invariant_factors().clone()
    }

    #[test]
    fn z2_by_z2() {
        let g = FinAb::cyclic(2);
        let twisted = Cocycle2::from_fn(g.clone(), g.clone(), |x, y| usize::from(x == 1 && y == 1));
        assert_eq!(ext(&g, &g, &twisted), FinAb::cyclic(4));
        assert_eq!(ext(&g, &g, &Cocycle2::zero(g.clone(), g.clone())), FinAb::new([2, 2]));
    }

    #[test]
    fn z3_by_z3_carry() {
        // Carry cocycle: c(x,y) = 1 when x + y wraps past 3.
        let g = FinAb::cyclic(3);
        let c = Cocycle2::from_fn(g.clone(), g.clone(), |x, y| usize::from(x + y >= 3));
        let e = build_extension(&g, &g, &c).unwrap();
        assert_eq!(e.invariant_factors(), &FinAb::cyclic(9));
        // (0,1) has order 9.
        let u = e.element(0, 1);
        let mut acc = u;
        let mut order = 1;
        while acc != 0 {
            acc = e.add(acc, u);
            order += 1;
        }
        assert_eq!(order, 9);
    }

    #[test]
    fn group_laws_and_projection() {
        let g = FinAb::new([2, 2]);
        let a = FinAb::cyclic(4);
        let c = Cocycle2::coboundary(g.clone(), a.clone(), &[0, 1, 3, 2]);
        let e = build_extension(&g, &a, &c).unwrap();
        let n = e.order();
        for u in 0..n {
            for v in 0..n {
                assert_eq!(e.add(u, v), e.add(v, u));
                assert_eq!(e.projection(e.add(u, v)), g.add(e.projection(u), e.projection(v)));
                for w in 0..n {
                    assert_eq!(e.add(e.add(u, v), w), e.add(u, e.add(v, w)));
                }
            }
        }
        assert_eq!(e.invariant_factors(), &FinAb::new([2, 2, 4]));
    }

    #[test]
    fn rejects_non_cocycle() {
        let g = FinAb::cyclic(3);
        let c = Cocycle2::from_fn(g.clone(), g.clone(), |x, y| usize::from(x == 1 && y == 1));
        assert!(matches!(build_extension(&g, &g, &c), Err(FinAbError::NotACocycle { .. })));
    }
}
