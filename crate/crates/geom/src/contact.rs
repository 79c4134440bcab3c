//! Sides, contact pairs and contact types.

use crate::GeomError;
use arrayvec::ArrayVec;
use serde::{Deserialize, Serialize};
use std::fmt;

/// A side of a square, relative to its own orientation frame.
///
/// The discriminants run clockwise starting at the top, so a quarter turn of
/// the frame is a shift of the index; see [`Side::shift`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    Top = 0,
    Right = 1,
    Bottom = 2,
    Left = 3,
}

impl Side {
    pub const ALL: [Side; 4] = [Side::Top, Side::Right, Side::Bottom, Side::Left];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Side {
        Side::ALL[i % 4]
    }

    pub fn opposite(self) -> Side {
        Side::from_index(self.index() + 2)
    }

    /// Top and bottom: the sides lying on lines of constant `v`.
    pub fn is_horizontal(self) -> bool {
        matches!(self, Side::Top | Side::Bottom)
    }

    pub fn is_adjacent(self, other: Side) -> bool {
        (self.index() + 1) % 4 == other.index() || (other.index() + 1) % 4 == self.index()
    }

    /// Label of the same geometric side after the frame turns by `k` quarter
    /// turns *backwards*. A pair `(p, Left)` at θ is `(p, Top)` at θ + π/2,
    /// so re-expressing a contact found at θ + π/2 in the frame of θ uses
    /// `shift(-1)`, and the other way round `shift(1)`.
    pub fn shift(self, k: i32) -> Side {
        Side::from_index((self.index() as i32 + k).rem_euclid(4) as usize)
    }

    pub fn letter(self) -> char {
        match self {
            Side::Top => 'T',
            Side::Right => 'R',
            Side::Bottom => 'B',
            Side::Left => 'L',
        }
    }

    pub fn from_letter(c: char) -> Option<Side> {
        match c.to_ascii_uppercase() {
            'T' => Some(Side::Top),
            'R' => Some(Side::Right),
            'B' => Some(Side::Bottom),
            'L' => Some(Side::Left),
            _ => None,
        }
    }
}

/// A point lying on a closed side of a square. `point` indexes the point set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ContactPair {
    pub point: u32,
    pub side: Side,
}

impl ContactPair {
    pub fn new(point: u32, side: Side) -> Self {
        ContactPair { point, side }
    }
}

impl fmt::Display for ContactPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.point, self.side.letter())
    }
}

/// A set of at most four contact pairs, kept sorted so that equal sets
/// compare and hash equal.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ContactType(ArrayVec<ContactPair, 4>);

impl ContactType {
    pub fn empty() -> Self {
        ContactType(ArrayVec::new())
    }

    pub fn new<I: IntoIterator<Item = ContactPair>>(pairs: I) -> Result<Self, GeomError> {
        let mut v: Vec<ContactPair> = pairs.into_iter().collect();
        v.sort();
        v.dedup();
        if v.len() > 4 {
            return Err(GeomError::TooManyContacts);
        }
        Ok(ContactType(v.into_iter().collect()))
    }

    /// Convenience constructor used mostly by tests: `&[(0, Side::Bottom), ...]`.
    pub fn of(pairs: &[(u32, Side)]) -> Self {
        Self::new(pairs.iter().map(|&(p, s)| ContactPair::new(p, s)))
            .expect("at most four pairs")
    }

    pub fn pairs(&self) -> &[ContactPair] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, pair: &ContactPair) -> bool {
        self.0.binary_search(pair).is_ok()
    }

    pub fn is_subset(&self, other: &ContactType) -> bool {
        self.0.iter().all(|p| other.contains(p))
    }

    /// Bit `s.index()` set for every pinned side.
    pub fn side_mask(&self) -> u8 {
        self.0.iter().fold(0u8, |m, p| m | (1 << p.side.index()))
    }

    pub fn pinned_sides(&self) -> u32 {
        self.side_mask().count_ones()
    }

    pub fn is_pinned(&self, side: Side) -> bool {
        self.side_mask() & (1 << side.index()) != 0
    }

    /// Distinct points, ascending.
    pub fn points(&self) -> ArrayVec<u32, 4> {
        let mut out = ArrayVec::new();
        for p in &self.0 {
            if out.last() != Some(&p.point) {
                out.push(p.point);
            }
        }
        out
    }

    /// Sides on which `point` appears, as a bit mask.
    pub fn sides_of(&self, point: u32) -> u8 {
        self.0
            .iter()
            .filter(|p| p.point == point)
            .fold(0u8, |m, p| m | (1 << p.side.index()))
    }

    /// Pairs lying on `side`.
    pub fn on_side(&self, side: Side) -> impl Iterator<Item = &ContactPair> {
        self.0.iter().filter(move |p| p.side == side)
    }

    /// The stapled side and its two points, if some side holds two pairs.
    pub fn staple(&self) -> Option<(Side, u32, u32)> {
        for s in Side::ALL {
            let mut it = self.on_side(s);
            if let (Some(a), Some(b)) = (it.next(), it.next()) {
                return Some((s, a.point, b.point));
            }
        }
        None
    }

    pub fn union(&self, other: &ContactType) -> Result<ContactType, GeomError> {
        ContactType::new(self.0.iter().chain(other.0.iter()).copied())
    }

    pub fn intersection(&self, other: &ContactType) -> ContactType {
        ContactType(self.0.iter().filter(|p| other.contains(p)).copied().collect())
    }

    pub fn minus(&self, other: &ContactType) -> ContactType {
        ContactType(self.0.iter().filter(|p| !other.contains(p)).copied().collect())
    }

    pub fn without(&self, pair: &ContactPair) -> ContactType {
        ContactType(self.0.iter().filter(|p| *p != pair).copied().collect())
    }

    pub fn with(&self, pair: ContactPair) -> Result<ContactType, GeomError> {
        ContactType::new(self.0.iter().copied().chain(std::iter::once(pair)))
    }

    /// Relabel every side by [`Side::shift`].
    pub fn shifted(&self, k: i32) -> ContactType {
        ContactType::new(self.0.iter().map(|p| ContactPair::new(p.point, p.side.shift(k))))
            .expect("relabelling keeps the size")
    }

    /// Rename points through `f`; used to map indices to external ids.
    pub fn map_points<F: Fn(u32) -> u32>(&self, f: F) -> ContactType {
        ContactType::new(self.0.iter().map(|p| ContactPair::new(f(p.point), p.side)))
            .expect("renaming keeps the size")
    }

    /// All subsets of the given size, in lexicographic order of positions.
    pub fn subsets(&self, size: usize) -> Vec<ContactType> {
        let n = self.0.len();
        let mut out = Vec::new();
        for mask in 0u32..(1 << n) {
            if mask.count_ones() as usize == size {
                out.push(ContactType(
                    (0..n).filter(|i| mask & (1 << i) != 0).map(|i| self.0[i]).collect(),
                ));
            }
        }
        out
    }
}

impl fmt::Display for ContactType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Side::*;

    #[test]
    fn shift_follows_quarter_turns() {
        // (p, Left) at θ is (p, Top) at θ + π/2.
        assert_eq!(Left.shift(1), Top);
        assert_eq!(Top.shift(1), Right);
        assert_eq!(Right.shift(1), Bottom);
        assert_eq!(Bottom.shift(1), Left);
        for s in Side::ALL {
            assert_eq!(s.shift(1).shift(-1), s);
            assert_eq!(s.shift(4), s);
        }
    }

    #[test]
    fn sorted_and_deduplicated() {
        let a = ContactType::of(&[(2, Top), (0, Left), (0, Bottom), (2, Top)]);
        let b = ContactType::of(&[(0, Bottom), (0, Left), (2, Top)]);
        assert_eq!(a, b);
        assert_eq!(a.len(), 3);
        assert_eq!(a.pinned_sides(), 3);
        assert_eq!(a.points().as_slice(), &[0, 2]);
    }

    #[test]
    fn staple_detection() {
        let k = ContactType::of(&[(0, Bottom), (0, Left), (1, Bottom), (1, Right)]);
        assert_eq!(k.staple(), Some((Bottom, 0, 1)));
        let k = ContactType::of(&[(0, Bottom), (0, Left), (1, Top), (1, Right)]);
        assert_eq!(k.staple(), None);
    }

    #[test]
    fn five_pairs_rejected() {
        let r = ContactType::new(
            [(0, Top), (0, Left), (1, Bottom), (2, Right), (3, Right)]
                .iter()
                .map(|&(p, s)| ContactPair::new(p, s)),
        );
        assert_eq!(r, Err(GeomError::TooManyContacts));
    }

    #[test]
    fn subsets_of_four() {
        let k = ContactType::of(&[(0, Bottom), (0, Left), (1, Top), (1, Right)]);
        assert_eq!(k.subsets(3).len(), 4);
        assert_eq!(k.subsets(2).len(), 6);
        assert!(k.subsets(3).iter().all(|s| s.is_subset(&k)));
    }
}
