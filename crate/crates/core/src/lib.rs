//! Commutator words, exact lower-central-series weights through the Magnus
//! embedding, and law verification over enumerated finite groups.

pub mod corpus;
pub mod groups;
pub mod magnus;
pub mod par;
pub mod theorems;
pub mod words;
