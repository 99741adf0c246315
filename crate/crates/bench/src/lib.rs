//! Fixtures shared by the benchmarks.

use modlat::repr::fence_poset;
use modlat::{catalog, AlgebraProfile, Class, Letter, ModalWord, UpsetAlgebra};

pub fn catalog_profiles() -> Vec<AlgebraProfile> {
    catalog::all_entries().iter().filter_map(|e| e.profile()).collect()
}

pub fn profile(name: &str) -> AlgebraProfile {
    catalog::get(name)
        .expect("catalog entry")
        .profile()
        .expect("has an algebra")
}

pub fn class_family(class: Class) -> Vec<AlgebraProfile> {
    catalog_profiles().into_iter().filter(|p| p.in_class(class)).collect()
}

/// The upset algebra of the `n`-th fence.
pub fn fence_algebra(n: usize) -> AlgebraProfile {
    UpsetAlgebra::new(&fence_poset(n).expect("n ≥ 1"))
        .expect("within the cap")
        .profile(format!("fence{n}"))
}

/// Words over `{¬, □}` of length at most 7 with at most two boxes.
pub fn neg_box_words() -> Vec<ModalWord> {
    modlat::modality::enumerate_words(&[Letter::Neg, Letter::Box], 7)
        .into_iter()
        .filter(|w| w.count(Letter::Box) <= 2)
        .collect()
}
