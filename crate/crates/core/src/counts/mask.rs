use std::fmt;

use crate::corpus::Kind;

/// Head-word positions of a tuple. In the 4-gram table `P1` holds the
/// preposition and `N2` its object.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Slot {
    V,
    N1,
    P1,
    N2,
    P2,
    N3,
    P3,
}

impl Slot {
    pub const ALL: [Slot; 7] = [Slot::V, Slot::N1, Slot::P1, Slot::N2, Slot::P2, Slot::N3, Slot::P3];

    const fn bit(self) -> u8 {
        1 << self as u8
    }

    pub fn name(self) -> &'static str {
        match self {
            Slot::V => "v",
            Slot::N1 => "n1",
            Slot::P1 => "p1",
            Slot::N2 => "n2",
            Slot::P2 => "p2",
            Slot::N3 => "n3",
            Slot::P3 => "p3",
        }
    }
}

/// A subset of slots; the words of a sub-tuple are read in slot order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PatternMask(u8);

impl PatternMask {
    pub const fn new(slots: &[Slot]) -> PatternMask {
        let mut bits = 0;
        let mut i = 0;
        while i < slots.len() {
            bits |= slots[i].bit();
            i += 1;
        }
        PatternMask(bits)
    }

    pub fn contains(self, slot: Slot) -> bool {
        self.0 & slot.bit() != 0
    }

    pub fn slots(self) -> impl Iterator<Item = Slot> {
        Slot::ALL.into_iter().filter(move |s| self.contains(*s))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for PatternMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<_> = self.slots().map(Slot::name).collect();
        write!(f, "{{{}}}", names.join(","))
    }
}

/// One count table. `Quad` is the (v, n1, p, n2) table behind the
/// reference 4-gram estimator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Table {
    Pp1,
    Pp2,
    Pp3,
    Quad,
}

use Slot::{N1, N2, N3, P1, P2, P3, V};

const PP1_LEVELS: &[&[PatternMask]] = &[
    &[PatternMask::new(&[V, N1, P1])],
    &[PatternMask::new(&[V, P1]), PatternMask::new(&[N1, P1])],
    &[PatternMask::new(&[P1])],
];

const PP2_LEVELS: &[&[PatternMask]] = &[
    &[PatternMask::new(&[V, N1, P1, N2, P2])],
    &[PatternMask::new(&[N1, P1, N2, P2]), PatternMask::new(&[V, P1, N2, P2]), PatternMask::new(&[V, N1, P1, P2])],
    &[PatternMask::new(&[P1, N2, P2]), PatternMask::new(&[V, P1, P2]), PatternMask::new(&[N1, P1, P2])],
];

const PP3_LEVELS: &[&[PatternMask]] = &[
    &[PatternMask::new(&[V, N1, P1, N2, P2, N3, P3])],
    // drop one of v, n1, n2, n3
    &[
        PatternMask::new(&[N1, P1, N2, P2, N3, P3]),
        PatternMask::new(&[V, P1, N2, P2, N3, P3]),
        PatternMask::new(&[V, N1, P1, P2, N3, P3]),
        PatternMask::new(&[V, N1, P1, N2, P2, P3]),
    ],
    // drop two
    &[
        PatternMask::new(&[P1, N2, P2, N3, P3]),
        PatternMask::new(&[N1, P1, P2, N3, P3]),
        PatternMask::new(&[N1, P1, N2, P2, P3]),
        PatternMask::new(&[V, P1, P2, N3, P3]),
        PatternMask::new(&[V, P1, N2, P2, P3]),
        PatternMask::new(&[V, N1, P1, P2, P3]),
    ],
];

const QUAD_LEVELS: &[&[PatternMask]] = &[
    &[PatternMask::new(&[V, N1, P1, N2])],
    &[PatternMask::new(&[V, N1, P1]), PatternMask::new(&[V, P1, N2]), PatternMask::new(&[N1, P1, N2])],
    &[PatternMask::new(&[V, P1]), PatternMask::new(&[N1, P1]), PatternMask::new(&[P1, N2])],
    &[PatternMask::new(&[P1])],
];

impl Table {
    pub const ALL: [Table; 4] = [Table::Pp1, Table::Pp2, Table::Pp3, Table::Quad];

    pub fn for_kind(kind: Kind) -> Table {
        match kind {
            Kind::One => Table::Pp1,
            Kind::Two => Table::Pp2,
            Kind::Three => Table::Pp3,
        }
    }

    /// Kind of the configurations counted in this table.
    pub fn config_kind(self) -> Kind {
        match self {
            Table::Pp1 | Table::Quad => Kind::One,
            Table::Pp2 => Kind::Two,
            Table::Pp3 => Kind::Three,
        }
    }

    pub fn num_configs(self) -> usize {
        self.config_kind().num_configs() as usize
    }

    /// Masks grouped by back-off level, most specific first. Level 0 is the
    /// full tuple alone.
    pub fn levels(self) -> &'static [&'static [PatternMask]] {
        match self {
            Table::Pp1 => PP1_LEVELS,
            Table::Pp2 => PP2_LEVELS,
            Table::Pp3 => PP3_LEVELS,
            Table::Quad => QUAD_LEVELS,
        }
    }

    pub fn full_mask(self) -> PatternMask {
        self.levels()[0][0]
    }

    pub fn legal_masks(self) -> impl Iterator<Item = PatternMask> {
        self.levels().iter().flat_map(|level| level.iter().copied())
    }

    pub fn is_legal(self, mask: PatternMask) -> bool {
        self.legal_masks().any(|m| m == mask)
    }

    /// Tag used for this table in model files.
    pub fn tag(self) -> &'static str {
        match self {
            Table::Pp1 => "1",
            Table::Pp2 => "2",
            Table::Pp3 => "3",
            Table::Quad => "cb4",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Table> {
        Table::ALL.into_iter().find(|t| t.tag() == tag)
    }
}

impl From<Kind> for Table {
    fn from(kind: Kind) -> Table {
        Table::for_kind(kind)
    }
}
