//! Bounded exhaustive enumeration, classification and counterexample search.

mod categories;

pub use categories::{automorphisms, canonical_key, categories_of_shape_size, enumerate_categories, CategoryBounds};
mod instances;

pub use instances::{enumerate_monads, enumerate_relmonads, Enumeration};
mod classify;

pub use classify::{classify, fingerprint, Classification, Flags};
mod search;

pub use search::{
    search, search_estimate, Census, CensusRow, Found, RootSource, SearchFlag, SearchMode, SearchOutcome, SearchSpec,
    DEFAULT_SEARCH_CAP, MAX_SEARCH_MORPHISMS,
};
