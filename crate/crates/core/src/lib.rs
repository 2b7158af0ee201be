pub mod algebra;
pub mod expr;
pub mod scalar;
pub mod weil;
pub mod jet;
pub mod envelope;
pub mod combinat;
pub mod wavefront;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/algebra.md")]
    mod algebra {}
    #[doc = include_str!("../../../book/src/weil.md")]
    mod weil {}
    #[doc = include_str!("../../../book/src/jets.md")]
    mod jets {}
    #[doc = include_str!("../../../book/src/envelopes.md")]
    mod envelopes {}
    #[doc = include_str!("../../../book/src/combinat.md")]
    mod combinat {}
    #[doc = include_str!("../../../book/src/wavefronts.md")]
    mod wavefronts {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
