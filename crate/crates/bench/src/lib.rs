//! Inputs shared by the benchmarks.

use tatecoh::{lens_complex, product_complex, ElementaryAbelianGroup, FreeChainComplex};

pub fn group(p: u32, r: u32) -> ElementaryAbelianGroup {
    ElementaryAbelianGroup::new(p, r).expect("prime p and r >= 1")
}

/// Named gallery complexes, smallest first.
pub fn complexes() -> Vec<(&'static str, FreeChainComplex)> {
    vec![
        ("lens(2,2)", lens_complex(2, 2).unwrap()),
        ("lens(3,2)", lens_complex(3, 2).unwrap()),
        ("product(2,[1,1])", product_complex(2, &[1, 1]).unwrap()),
        ("product(3,[1,1])", product_complex(3, &[1, 1]).unwrap()),
    ]
}
