//! Bounded search for a six-term sequence that forces a goal value.

use std::fmt;

use super::engine::{Engine, Goal, QueryCx};
use super::les::{solve_les, SixTermSeq};
use super::value::{Citation, Functor, HomExtValue};
use crate::cover::Operand;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivationStep {
    pub rule: String,
    pub inputs: Vec<String>,
    pub output: String,
}

impl fmt::Display for DerivationStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inputs.is_empty() {
            write!(f, "[{}] {}", self.rule, self.output)
        } else {
            write!(f, "[{}] {} => {}", self.rule, self.inputs.join(", "), self.output)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    pub goal: Goal,
    pub value: Operand,
    pub steps: Vec<DerivationStep>,
    pub citations: Vec<Citation>,
    /// The sequence with the goal slots left unknown; `None` for a direct
    /// rule evaluation.
    pub sequence: Option<SixTermSeq>,
    pub goal_slot: Option<usize>,
}

impl Derivation {
    /// Number of exact sequences used at the top level.
    pub fn length(&self) -> usize {
        usize::from(self.sequence.is_some())
    }

    /// Re-runs the solver on the recorded sequence and returns the value it
    /// assigns to the goal slot.
    pub fn replay(&self) -> Option<Operand> {
        match (&self.sequence, self.goal_slot) {
            (Some(s), Some(slot)) => {
                solve_les(s).ok()?.into_iter().find(|(i, _)| *i == slot).map(|(_, v)| v)
            }
            (None, _) => Some(self.value.clone()),
            (Some(_), None) => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeriveFailure {
    pub goal: Goal,
    pub reason: String,
    /// Sequences tried, with what happened.
    pub explored: Vec<String>,
}

impl fmt::Display for DeriveFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "no derivation of {}: {}", self.goal.label(), self.reason)
    }
}

fn slot_line(label: &str, v: &Operand) -> String {
    format!("{label} = {}", v.ascii())
}

impl Engine {
    pub fn derive(&self, f: Functor, a: &Operand, b: &Operand) -> Result<Derivation, Box<DeriveFailure>> {
        self.derive_within(&Goal::new(f, a.clone(), b.clone()), self.config().depth, &[])
    }

    pub(crate) fn derive_within(&self, goal: &Goal, depth: u32, outer: &[Goal]) -> Result<Derivation, Box<DeriveFailure>> {
        let mut mask = outer.to_vec();
        mask.push(goal.clone());
        let cx0 = QueryCx { mask: mask.clone(), budget: 0 };
        let direct = self.combine(goal.functor, goal, |x, y| self.eval_rules(goal.functor, x, y, &cx0, true));
        if let Some(value) = direct.value.operand() {
            let steps = direct
                .trace
                .iter()
                .map(|t| DerivationStep { rule: t.rule.clone(), inputs: Vec::new(), output: format!("{} ({})", t.pair, t.detail) })
                .chain(std::iter::once(DerivationStep {
                    rule: "RESULT".into(),
                    inputs: Vec::new(),
                    output: slot_line(&goal.label(), &value),
                }))
                .collect();
            return Ok(Derivation {
                goal: goal.clone(),
                value,
                steps,
                citations: direct.citations,
                sequence: None,
                goal_slot: None,
            });
        }

        let candidates = self.candidates(goal);
        let mut explored = Vec::new();
        for d in 1..=depth {
            let cx = QueryCx { mask: mask.clone(), budget: d - 1 };
            for (ses, x, variance, goal_slots) in &candidates {
                let tag = format!("{} with x = {} ({variance:?}, depth {d})", ses.label, x.ascii());
                let seq = match self.emit_les_cx(ses, x, *variance, &cx) {
                    Ok(s) => s,
                    Err(e) => {
                        explored.push(format!("{tag}: {e}"));
                        continue;
                    }
                };
                let assigned = match solve_les(&seq) {
                    Ok(a) => a,
                    Err(e) => {
                        explored.push(format!("{tag}: {e}"));
                        continue;
                    }
                };
                let Some((slot, value)) = assigned.iter().find(|(i, _)| goal_slots.contains(i)).cloned() else {
                    explored.push(format!("{tag}: goal slot not forced"));
                    continue;
                };
                return Ok(self.package(goal, seq, assigned, slot, value));
            }
        }
        let reason = match &direct.value {
            HomExtValue::Unresolved { reason, .. } if candidates.is_empty() => {
                format!("{reason}; no catalog sequence contains the goal")
            }
            _ => format!("no catalog sequence forces the goal within depth {depth}"),
        };
        Err(Box::new(DeriveFailure { goal: goal.clone(), reason, explored }))
    }

    fn package(
        &self,
        goal: &Goal,
        seq: SixTermSeq,
        assigned: Vec<(usize, Operand)>,
        slot: usize,
        value: Operand,
    ) -> Derivation {
        let mut steps = Vec::new();
        let mut citations = Vec::new();
        let mut known: Vec<Option<Operand>> = seq.slots.iter().map(|s| s.value.clone()).collect();
        for s in &seq.slots {
            if let Some(v) = &s.value {
                steps.push(DerivationStep {
                    rule: s.rules.last().cloned().unwrap_or_else(|| "R1-BIADDITIVE".into()),
                    inputs: s.citations.iter().map(|c| c.id.clone()).collect(),
                    output: slot_line(&s.label(), v),
                });
                citations.extend(s.citations.iter().cloned());
            }
        }
        for cf in &seq.coker {
            steps.push(DerivationStep {
                rule: "COKER-FACT".into(),
                inputs: vec![cf.citation.id.clone()],
                output: format!("coker({} -> {}) = {}", seq.slots[cf.from].label(), seq.slots[cf.from + 1].label(), cf.value.ascii()),
            });
            citations.push(cf.citation.clone());
        }
        for (i, v) in &assigned {
            let neighbours = |j: isize| -> String {
                if j < 0 || j as usize >= known.len() {
                    "0".into()
                } else {
                    let s = &seq.slots[j as usize];
                    match &known[j as usize] {
                        Some(v) => slot_line(&s.label(), v),
                        None => format!("{} = ?", s.label()),
                    }
                }
            };
            let i_s = *i as isize;
            steps.push(DerivationStep {
                rule: "LES-SOLVE".into(),
                inputs: vec![neighbours(i_s - 2), neighbours(i_s - 1), neighbours(i_s + 1), neighbours(i_s + 2)],
                output: slot_line(&seq.slots[*i].label(), v),
            });
            known[*i] = Some(v.clone());
            if *i == slot {
                break;
            }
        }
        citations.sort();
        citations.dedup();
        Derivation { goal: goal.clone(), value, steps, citations, sequence: Some(seq), goal_slot: Some(slot) }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::Atom;

    #[test]
    fn prufer_padic_via_sequence() {
        let e = Engine::standard();
        let d = e.derive(Functor::Ext, &Atom::Prufer(2).into(), &Atom::PadicInt(2).into()).unwrap();
        assert_eq!(d.value, Atom::PadicInt(2).into());
        assert!(d.sequence.as_ref().unwrap().label.starts_with("Zp(2) -> Qp(2)"));
        assert_eq!(d.replay(), Some(d.value.clone()));
    }

    #[test]
    fn circle_int_via_real_line() {
        let e = Engine::standard();
        let d = e.derive(Functor::Ext, &Atom::Circle.into(), &Atom::Int.into()).unwrap();
        assert_eq!(d.value, Atom::Int.into());
        assert_eq!(d.sequence.as_ref().unwrap().label, "Z -> R -> T");
    }

    #[test]
    fn real_real_is_immediate() {
        let e = Engine::standard();
        let d = e.derive(Functor::Ext, &Atom::Real.into(), &Atom::Real.into()).unwrap();
        assert_eq!(d.length(), 0);
        assert!(d.value.is_zero());
    }
}
