//! Hom/Ext rule engine, six-term exact sequences, derivations and the
//! countability reasoner.

mod audit;
mod countable;
mod derive;
mod engine;
mod facts;
mod les;
mod rules;
mod value;

pub use audit::{audit_facts, audit_rules, audit_universe, AuditError, AuditReport};
pub use countable::{Countable, CountabilityAnswer};
pub use derive::{DeriveFailure, Derivation, DerivationStep};
pub use engine::{Engine, EngineConfig, Goal};
pub use facts::{Fact, FactBase, FactError, FactKind, TermPattern};
pub use les::{ses_catalog, solve_les, CokerFact, LesError, ShortExactSeq, SixTermSeq, Slot, Variance};
pub use rules::{Outcome, Rule, RuleEnv, RuleRegistry, UnknownRule};
pub use value::{Answer, Citation, Functor, HomExtValue, Provenance, Term, TraceStep};
