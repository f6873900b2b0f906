use crate::kleitman::Witness;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("ground set size {0} is outside 1..={1}")]
    GroundSetSize(usize, usize),
    #[error("element {element} is outside 1..={n}")]
    ElementOutOfRange { element: usize, n: usize },
    #[error("mask {mask:#b} has bits outside a ground set of size {n}")]
    MaskOutOfRange { mask: u32, n: usize },
    #[error("ground sets differ: {0} vs {1}")]
    GroundSetMismatch(usize, usize),
    #[error("link base {base:#b} meets the link universe {universe:#b}")]
    LinkOverlap { universe: u32, base: u32 },
    #[error("link target is not a family over the universe {{{0}}}")]
    LinkTarget(usize),
    #[error("family is not maximal intersecting")]
    NotMaximalIntersecting,
    #[error("family is not subset-closed")]
    NotSubsetClosed,
    #[error("family is not empty-minimal: {0}")]
    NotEmptyMinimal(Witness),
    #[error("construction precondition failed: {0}")]
    Precondition(Precondition),
    #[error("invalid family document: {0}")]
    Format(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

/// Named hypotheses of the family constructions.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Precondition {
    #[error("ground set size {0} is not odd")]
    EvenGroundSet(usize),
    #[error("base family is not central")]
    NotCentral,
    #[error("swap family is not intersecting")]
    NotIntersecting,
    #[error("member {0:#b} of the swap family is not in the middle layer")]
    OffMiddleLayer(u32),
    #[error("swap family has {size} members, more than {bound}")]
    TooLarge { size: usize, bound: usize },
    #[error("set {0:#b} is not a member of the family")]
    NotMember(u32),
    #[error("set {0:#b} is not a minimal member of the family")]
    NotMinimal(u32),
    #[error("set {0:#b} has balanced size")]
    Balanced(u32),
}
