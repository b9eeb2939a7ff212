//! Triangulation of the closed formula, the linear-algebra cocycle quotient
//! and exhaustive enumeration.

use std::collections::{BTreeMap, HashSet};

use super::{build_extension, cocycle_group, enumerate_cocycles, ext_finite, Cocycle2, FinAb};

/// Largest `|G|·|A|` for exhaustive enumeration.
pub const EXHAUSTIVE_BOUND: u64 = 16;

#[derive(Clone, Debug)]
pub struct Exhaustive {
    pub cocycles: usize,
    pub coboundaries: usize,
    /// Cohomology classes, i.e. cosets of the coboundaries.
    pub classes: usize,
    /// Invariant factors of the middle groups, with multiplicity per class.
    pub middle_groups: BTreeMap<FinAb, usize>,
}

#[derive(Clone, Debug)]
pub struct CrossCheck {
    pub g: FinAb,
    pub a: FinAb,
    pub formula: FinAb,
    pub cocycle_quotient: Option<FinAb>,
    pub exhaustive: Option<Exhaustive>,
    pub mismatches: Vec<String>,
    pub skipped: Vec<String>,
}

impl CrossCheck {
    pub fn agrees(&self) -> bool {
        self.mismatches.is_empty()
    }
}

fn all_functions(g: &FinAb, a: &FinAb) -> Vec<Vec<usize>> {
    let n = g.order() as usize;
    let na = a.order() as usize;
    let mut out = vec![vec![0usize; n]];
    for x in 1..n {
        out = out
            .into_iter()
            .flat_map(|f| {
                (0..na).map(move |v| {
                    let mut f = f.clone();
                    f[x] = v;
                    f
                })
            })
            .collect();
    }
    out
}

pub fn crosscheck(g: &FinAb, a: &FinAb) -> CrossCheck {
    let formula = ext_finite(g, a);
    let mut report = CrossCheck {
        g: g.clone(),
        a: a.clone(),
        formula: formula.clone(),
        cocycle_quotient: None,
        exhaustive: None,
        mismatches: Vec::new(),
        skipped: Vec::new(),
    };
    match cocycle_group(g, a) {
        Ok(cg) => {
            if cg.quotient != formula {
                report
                    .mismatches
                    .push(format!("cocycle quotient {} differs from formula {}", cg.quotient, formula));
            }
            if cg.cocycles.order_exponents() != cg.coboundaries.direct_sum(&cg.quotient).order_exponents() {
                report.mismatches.push(format!(
                    "|Z2| is not |B2|·|H2| for Z2 = {}, B2 = {}, H2 = {}",
                    cg.cocycles, cg.coboundaries, cg.quotient
                ));
            }
            for (i, c) in cg.basis.iter().enumerate() {
                if let Err(e) = build_extension(g, a, c) {
                    report.mismatches.push(format!("basis cocycle {i} rejected: {e}"));
                }
            }
            report.cocycle_quotient = Some(cg.quotient);
        }
        Err(e) => report.skipped.push(format!("cocycle oracle: {e}")),
    }
    if g.order() * a.order() <= EXHAUSTIVE_BOUND {
        let ex = exhaustive(g, a);
        if ex.classes as u64 != formula.order() {
            report
                .mismatches
                .push(format!("{} classes enumerated, formula order {}", ex.classes, formula.order()));
        }
        report.exhaustive = Some(ex);
    } else {
        report.skipped.push(format!("exhaustive enumeration: |G|·|A| > {EXHAUSTIVE_BOUND}"));
    }
    report
}

fn exhaustive(g: &FinAb, a: &FinAb) -> Exhaustive {
    let cocycles = enumerate_cocycles(g, a);
    let boundaries: Vec<Cocycle2> = all_functions(g, a)
        .iter()
        .map(|f| Cocycle2::coboundary(g.clone(), a.clone(), f).table().to_vec())
        .collect::<HashSet<Vec<usize>>>()
        .into_iter()
        .map(|t| Cocycle2::new(g.clone(), a.clone(), t).expect("shape"))
        .collect();
    let mut classes: BTreeMap<Vec<usize>, &Cocycle2> = BTreeMap::new();
    for c in &cocycles {
        let key = boundaries
            .iter()
            .map(|b| c.add(b).table().to_vec())
            .min()
            .expect("zero coboundary present");
        classes.entry(key).or_insert(c);
    }
    let mut middle_groups = BTreeMap::new();
    for rep in classes.values() {
        let e = build_extension(g, a, rep).expect("enumerated cocycles satisfy the identities");
        *middle_groups.entry(e.invariant_factors().clone()).or_insert(0) += 1;
    }
    Exhaustive {
        cocycles: cocycles.len(),
        coboundaries: boundaries.len(),
        classes: classes.len(),
        middle_groups,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn z2_z2_two_classes() {
        let r = crosscheck(&FinAb::cyclic(2), &FinAb::cyclic(2));
        assert!(r.agrees(), "{:?}", r.mismatches);
        let ex = r.exhaustive.unwrap();
        assert_eq!(ex.classes, 2);
        let groups: Vec<FinAb> = ex.middle_groups.keys().cloned().collect();
        assert_eq!(groups, vec![FinAb::new([2, 2]), FinAb::cyclic(4)]);
    }

    #[test]
    fn z4_z2() {
        let r = crosscheck(&FinAb::cyclic(4), &FinAb::cyclic(2));
        assert!(r.agrees());
        assert_eq!(r.formula.order(), 2);
        assert_eq!(r.exhaustive.unwrap().classes, 2);
    }

    #[test]
    fn trivial_source() {
        let r = crosscheck(&FinAb::trivial(), &FinAb::cyclic(5));
        assert!(r.agrees());
        assert_eq!(r.exhaustive.unwrap().classes, 1);
    }

    #[test]
    fn z3_z3_yoneda_vs_iso_classes() {
        // Three classes but only two middle groups: Z/9 appears twice.
        let r = crosscheck(&FinAb::cyclic(3), &FinAb::cyclic(3));
        assert!(r.agrees());
        let ex = r.exhaustive.unwrap();
        assert_eq!(ex.classes, 3);
        assert_eq!(ex.middle_groups.get(&FinAb::cyclic(9)), Some(&2));
        assert_eq!(ex.middle_groups.get(&FinAb::new([3, 3])), Some(&1));
    }
}
