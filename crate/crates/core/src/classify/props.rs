//! Per-atom structural predicates and the derived property vector.

use crate::expr::{Atom, GroupExpr};

impl Atom {
    pub fn is_compact(self) -> bool {
        matches!(
            self,
            Atom::Circle
                | Atom::Cyclic(..)
                | Atom::PadicInt(_)
                | Atom::Solenoid
                | Atom::OmegaTorus
                | Atom::OmegaProd(_)
        )
    }

    pub fn is_discrete(self) -> bool {
        matches!(self, Atom::Int | Atom::Rat | Atom::Cyclic(..) | Atom::Prufer(_) | Atom::OmegaSum(_))
    }

    /// Countable locally compact Polish groups are exactly the countable discrete ones.
    pub fn is_countable(self) -> bool {
        self.is_discrete()
    }

    pub fn is_connected(self) -> bool {
        matches!(self, Atom::Real | Atom::Circle | Atom::Solenoid | Atom::OmegaTorus)
    }

    pub fn is_totally_disconnected(self) -> bool {
        !self.is_connected()
    }

    pub fn is_topological_torsion(self) -> bool {
        matches!(
            self,
            Atom::Cyclic(..)
                | Atom::Prufer(_)
                | Atom::PadicInt(_)
                | Atom::PadicRat(_)
                | Atom::OmegaProd(_)
                | Atom::OmegaSum(_)
        )
    }

    pub fn is_topological_p_group(self, p: u64) -> bool {
        self.is_topological_torsion() && self.prime() == Some(p)
    }

    pub fn is_divisible(self) -> bool {
        matches!(
            self,
            Atom::Rat
                | Atom::Real
                | Atom::Circle
                | Atom::PadicRat(_)
                | Atom::Prufer(_)
                | Atom::Solenoid
                | Atom::OmegaTorus
        )
    }

    /// Dual is divisible. `OmegaTorus` is dual to a free group, so it is not.
    pub fn is_codivisible(self) -> bool {
        matches!(
            self,
            Atom::Int | Atom::Real | Atom::Rat | Atom::Solenoid | Atom::PadicInt(_) | Atom::PadicRat(_)
        )
    }

    /// Every element has finite order (algebraic torsion).
    pub fn is_torsion(self) -> bool {
        matches!(self, Atom::Cyclic(..) | Atom::Prufer(_) | Atom::OmegaProd(_) | Atom::OmegaSum(_))
    }

    pub fn is_torsion_free(self) -> bool {
        matches!(
            self,
            Atom::Int | Atom::Rat | Atom::Real | Atom::PadicInt(_) | Atom::PadicRat(_) | Atom::Solenoid
        )
    }

    /// No nonzero divisible subgroup.
    pub fn is_reduced(self) -> bool {
        matches!(
            self,
            Atom::Int | Atom::Cyclic(..) | Atom::PadicInt(_) | Atom::OmegaProd(_) | Atom::OmegaSum(_)
        )
    }

    pub fn is_compactly_generated(self) -> bool {
        self.is_compact() || matches!(self, Atom::Int | Atom::Real)
    }

    pub fn is_lie(self) -> bool {
        matches!(
            self,
            Atom::Int | Atom::Rat | Atom::Real | Atom::Circle | Atom::Cyclic(..) | Atom::Prufer(_)
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropertyVector {
    pub compact: bool,
    pub discrete: bool,
    pub countable: bool,
    pub connected: bool,
    pub totally_disconnected: bool,
    pub topological_torsion: bool,
    /// Primes carried by topological torsion summands.
    pub torsion_primes: Vec<u64>,
    pub divisible: bool,
    pub codivisible: bool,
    pub compactly_generated: bool,
    pub lie: bool,
    pub finite_ranks: bool,
    pub type_s1: bool,
    pub type_a: bool,
    pub type_z: bool,
}

impl PropertyVector {
    pub fn is_topological_p_group(&self, p: u64) -> bool {
        self.topological_torsion && self.torsion_primes.iter().all(|&q| q == p)
    }

    /// Named boolean fields in display order.
    pub fn flags(&self) -> Vec<(&'static str, bool)> {
        vec![
            ("compact", self.compact),
            ("discrete", self.discrete),
            ("countable", self.countable),
            ("connected", self.connected),
            ("totally_disconnected", self.totally_disconnected),
            ("topological_torsion", self.topological_torsion),
            ("divisible", self.divisible),
            ("codivisible", self.codivisible),
            ("compactly_generated", self.compactly_generated),
            ("lie", self.lie),
            ("finite_ranks", self.finite_ranks),
            ("type_S1", self.type_s1),
            ("type_A", self.type_a),
            ("type_Z", self.type_z),
        ]
    }
}

pub fn properties(g: &GroupExpr) -> PropertyVector {
    let compact = g.all(Atom::is_compact);
    let connected = g.all(Atom::is_connected);
    let topological_torsion = g.all(Atom::is_topological_torsion);
    PropertyVector {
        compact,
        discrete: g.all(Atom::is_discrete),
        countable: g.all(Atom::is_countable),
        connected,
        totally_disconnected: g.all(Atom::is_totally_disconnected),
        topological_torsion,
        torsion_primes: g.filter(Atom::is_topological_torsion).primes(),
        divisible: g.all(Atom::is_divisible),
        codivisible: g.all(Atom::is_codivisible),
        compactly_generated: g.all(Atom::is_compactly_generated),
        lie: g.all(Atom::is_lie),
        finite_ranks: g.all(Atom::is_core),
        type_s1: compact && connected,
        type_a: g.all(|a| a == Atom::Real || a.is_topological_torsion()),
        type_z: g.all(|a| matches!(a, Atom::Int | Atom::Rat)),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeDecomposition {
    pub s1_part: GroupExpr,
    pub r_part: GroupExpr,
    pub t_part: GroupExpr,
    pub z_part: GroupExpr,
}

pub fn decompose(g: &GroupExpr) -> TypeDecomposition {
    TypeDecomposition {
        s1_part: g.filter(|a| matches!(a, Atom::Circle | Atom::Solenoid | Atom::OmegaTorus)),
        r_part: g.filter(|a| a == Atom::Real),
        t_part: g.filter(Atom::is_topological_torsion),
        z_part: g.filter(|a| matches!(a, Atom::Int | Atom::Rat)),
    }
}

pub fn p_component(g: &GroupExpr, p: u64) -> GroupExpr {
    g.filter(|a| a.is_topological_p_group(p))
}
