//! Built-in weighted flag formats: root data, weight multiplicities, ambient
//! weights, Hilbert numerators and the enumeration of distinct embeddings.

mod character;
mod embedding;
mod format;
pub mod lie;

pub use character::{CharacterTable, DominantWeight};
pub use embedding::{
    closed_form_series, enumerate_parameters, hilbert_series, hilbert_series_with, is_regular, EmbeddingData,
    ParamBound,
};
pub use format::{ambient_weights, CocharacterParam, FormatKind, FormatSpec};
pub use lie::{RootData, Weight, WeylElement};
