//! Slither codes: Prüfer-type bijections between labelled rooted trees and
//! integer sequences, and what they reveal about random trees.
//!
//! * [`tree`]: rooted trees, Slither classification, independence/matching/
//!   path-cover numbers with certificates, brute-force oracles.
//! * [`codec`]: the slither-code bijections and the readings that extract
//!   tree parameters from a code without decoding it.
//! * [`games`]: dice and card games, tree samplers, seeded Monte-Carlo runs
//!   and goodness-of-fit statistics.
//! * [`enumeration`]: exact big-integer distributions.
//! * [`asymptotics`]: limiting constants and the central-limit check.
//! * [`io`]: text and JSON formats.

pub mod asymptotics;
pub mod codec;
pub mod enumeration;
pub mod games;
pub mod io;
pub mod tree;

pub use codec::{AuxiliarySequence, CodecError, ReadResult, RootClass, SlitherCode};
pub use enumeration::{BigCount, DistributionTable};
pub use games::{RandomSource, TrialHistogram};
pub use tree::{MatchingCertificate, Position, PositionMap, RootedTree, StrategicSet, UnrootedTree, Variant};

/// Exact rational used for closed-form evaluations.
pub type Rational = num_rational::BigRational;
pub type Constants = asymptotics::ConstantsReport<f64>;
pub type ConstantsF32 = asymptotics::ConstantsReport<f32>;
pub type FamilyMeans = asymptotics::FamilyMeans<f64>;
