//! Coset-representative tables for the E6 and E7 computations.
//!
//! Each table lists the orbit of a minuscule fundamental weight under a
//! chain of coset representatives: every row after the first is obtained by
//! applying one simple reflection to an earlier row. The rows double as
//!   * the coset representatives of the top filtration layers, and
//!   * the full weight set of the minuscule representation driving the
//!     verification.
//!
//! The simple roots of E6 and E7 are not hardcoded anywhere; they are
//! recovered from the edge structure of these tables (each edge labelled
//! `s_i` determines `α_i` as a difference of two tabulated weights) and then
//! cross-validated by regenerating every row. See `RootSystem::build`.

use crate::weight::Weight;

/// One table row: tabulated weight coordinates, the reduced length of the
/// representative, the defining edge `(letter, parent row)`, and an optional
/// alternate edge that must reproduce the same weight.
pub struct TableRow {
    pub coords: &'static [&'static str],
    pub len: u8,
    pub edge: Option<(u8, usize)>,
    pub alt: Option<(u8, usize)>,
}

/// Which of the three tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableId {
    /// 27 representatives for the E6 top layer (orbit of ϖ₆).
    E6Top,
    /// 27 representatives for the middle E7 layer (orbit of ϖ₇).
    E7Mid,
    /// 56 representatives for the E7 top layer (orbit of ϖ₁).
    E7Top,
}

impl TableRow {
    pub fn weight(&self) -> Weight {
        Weight::parse(self.coords)
    }
}

/// The fully expanded word of one row: its own letter followed by the word
/// of its parent, so the leftmost letter is applied last.
pub fn row_word(rows: &[TableRow], index: usize) -> Vec<u8> {
    let mut word = Vec::new();
    let mut at = index;
    while let Some((letter, parent)) = rows[at].edge {
        word.push(letter);
        at = parent;
    }
    word
}

pub fn rows(id: TableId) -> &'static [TableRow] {
    match id {
        TableId::E6Top => E6_TOP,
        TableId::E7Mid => E7_MID,
        TableId::E7Top => E7_TOP,
    }
}

/// Two edges with the same label produced different roots, or some label is
/// missing from the table entirely.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TableError {
    #[error("edges labelled s{letter} disagree on the simple root")]
    InconsistentTable { letter: u8 },
    #[error("no edge labelled s{letter} in the supplied tables")]
    MissingLetter { letter: u8 },
}

/// Recovers the simple roots from table edges.
///
/// Every child row equals `s_i(parent)` for its edge label `i`, and the
/// tabulated weights are minuscule, so their coroot pairings lie in
/// {0, ±1}; a weight-changing edge therefore satisfies
/// `parent − child = α_i` exactly. All edges with the same label (including
/// alternate edges) must agree.
pub fn reconstruct_simple_roots(
    tables: &[&[TableRow]],
    rank: usize,
) -> Result<Vec<Weight>, TableError> {
    let mut found: Vec<Option<Weight>> = vec![None; rank + 1];
    for rows in tables {
        for row in rows.iter() {
            let child = row.weight();
            for (letter, parent) in row.edge.iter().chain(row.alt.iter()) {
                let candidate = &rows[*parent].weight() - &child;
                match &found[*letter as usize] {
                    None => found[*letter as usize] = Some(candidate),
                    Some(existing) if *existing == candidate => {}
                    Some(_) => {
                        return Err(TableError::InconsistentTable { letter: *letter });
                    }
                }
            }
        }
    }
    (1..=rank)
        .map(|i| {
            found[i]
                .clone()
                .ok_or(TableError::MissingLetter { letter: i as u8 })
        })
        .collect()
}

const E6_TOP: &[TableRow] = &{
    const H: &str = "1/6*sqrt3"; // 1/(2√3)
    const M: &str = "-1/3*sqrt3"; // −1/√3
    macro_rules! row {
        ([$($c:expr),*], $len:expr) => {
            TableRow { coords: &[$($c),*], len: $len, edge: None, alt: None }
        };
        ([$($c:expr),*], $len:expr, $l:expr, $p:expr) => {
            TableRow { coords: &[$($c),*], len: $len, edge: Some(($l, $p)), alt: None }
        };
        ([$($c:expr),*], $len:expr, $l:expr, $p:expr, $l2:expr, $p2:expr) => {
            TableRow {
                coords: &[$($c),*],
                len: $len,
                edge: Some(($l, $p)),
                alt: Some(($l2, $p2)),
            }
        };
    }
    [
        row!(["0", "0", "0", "0", "0", "2/3*sqrt3"], 0),
        row!(["1/2", "1/2", "1/2", "1/2", "1/2", H], 1, 6, 0),
        row!(["1/2", "1/2", "1/2", "-1/2", "-1/2", H], 2, 5, 1),
        row!(["1/2", "1/2", "-1/2", "1/2", "-1/2", H], 3, 3, 2),
        row!(["1/2", "-1/2", "1/2", "1/2", "-1/2", H], 4, 2, 3),
        row!(["1/2", "1/2", "-1/2", "-1/2", "1/2", H], 4, 4, 3),
        row!(["-1/2", "1/2", "1/2", "1/2", "-1/2", H], 5, 1, 4),
        row!(["1/2", "-1/2", "1/2", "-1/2", "1/2", H], 5, 2, 5),
        row!(["-1/2", "1/2", "1/2", "-1/2", "1/2", H], 6, 4, 6, 1, 7),
        row!(["1/2", "-1/2", "-1/2", "1/2", "1/2", H], 6, 3, 7),
        row!(["-1/2", "1/2", "-1/2", "1/2", "1/2", H], 7, 3, 8, 1, 9),
        row!(["1/2", "-1/2", "-1/2", "-1/2", "-1/2", H], 7, 5, 9),
        row!(["-1/2", "-1/2", "1/2", "1/2", "1/2", H], 8, 2, 10),
        row!(["-1/2", "1/2", "-1/2", "-1/2", "-1/2", H], 8, 5, 10, 1, 11),
        row!(["1", "0", "0", "0", "0", M], 8, 6, 11),
        row!(["-1/2", "-1/2", "1/2", "-1/2", "-1/2", H], 9, 5, 12, 2, 13),
        row!(["0", "1", "0", "0", "0", M], 9, 6, 13, 1, 14),
        row!(["-1/2", "-1/2", "-1/2", "1/2", "-1/2", H], 10, 3, 15),
        row!(["0", "0", "1", "0", "0", M], 10, 6, 15, 2, 16),
        row!(["-1/2", "-1/2", "-1/2", "-1/2", "1/2", H], 11, 4, 17),
        row!(["0", "0", "0", "1", "0", M], 11, 6, 17, 3, 18),
        row!(["0", "0", "0", "0", "1", M], 12, 6, 19),
        row!(["0", "0", "0", "0", "-1", M], 12, 5, 20),
        row!(["0", "0", "0", "-1", "0", M], 13, 5, 21, 4, 22),
        row!(["0", "0", "-1", "0", "0", M], 14, 3, 23),
        row!(["0", "-1", "0", "0", "0", M], 15, 2, 24),
        row!(["-1", "0", "0", "0", "0", M], 16, 1, 25),
    ]
};

const E7_MID: &[TableRow] = &{
    const H: &str = "1/2*sqrt2"; // 1/√2
    macro_rules! row {
        ([$($c:expr),*], $len:expr) => {
            TableRow { coords: &[$($c),*], len: $len, edge: None, alt: None }
        };
        ([$($c:expr),*], $len:expr, $l:expr, $p:expr) => {
            TableRow { coords: &[$($c),*], len: $len, edge: Some(($l, $p)), alt: None }
        };
        ([$($c:expr),*], $len:expr, $l:expr, $p:expr, $l2:expr, $p2:expr) => {
            TableRow {
                coords: &[$($c),*],
                len: $len,
                edge: Some(($l, $p)),
                alt: Some(($l2, $p2)),
            }
        };
    }
    [
        row!(["0", "0", "0", "0", "0", "0", "sqrt2"], 0),
        row!(["1/2", "1/2", "1/2", "1/2", "1/2", "1/2", H], 1, 7, 0),
        row!(["1/2", "1/2", "1/2", "1/2", "-1/2", "-1/2", H], 2, 6, 1),
        row!(["1/2", "1/2", "1/2", "-1/2", "1/2", "-1/2", H], 3, 4, 2),
        row!(["1/2", "1/2", "-1/2", "1/2", "1/2", "-1/2", H], 4, 3, 3),
        row!(["1/2", "1/2", "1/2", "-1/2", "-1/2", "1/2", H], 4, 5, 3),
        row!(["1/2", "-1/2", "1/2", "1/2", "1/2", "-1/2", H], 5, 2, 4),
        row!(["1/2", "1/2", "-1/2", "1/2", "-1/2", "1/2", H], 5, 3, 5),
        row!(["1/2", "-1/2", "1/2", "1/2", "-1/2", "1/2", H], 6, 5, 6, 2, 7),
        row!(["1/2", "1/2", "-1/2", "-1/2", "1/2", "1/2", H], 6, 4, 7),
        row!(["1/2", "-1/2", "1/2", "-1/2", "1/2", "1/2", H], 7, 4, 8, 2, 9),
        row!(["1/2", "1/2", "-1/2", "-1/2", "-1/2", "-1/2", H], 7, 6, 9),
        row!(["1/2", "-1/2", "-1/2", "1/2", "1/2", "1/2", H], 8, 3, 10),
        row!(["1/2", "-1/2", "1/2", "-1/2", "-1/2", "-1/2", H], 8, 6, 10, 2, 11),
        row!(["1", "1", "0", "0", "0", "0", "0"], 8, 7, 11),
        row!(["1/2", "-1/2", "-1/2", "1/2", "-1/2", "-1/2", H], 9, 6, 12, 3, 13),
        row!(["1", "0", "1", "0", "0", "0", "0"], 9, 7, 13, 2, 14),
        row!(["1/2", "-1/2", "-1/2", "-1/2", "1/2", "-1/2", H], 10, 4, 15),
        row!(["1", "0", "0", "1", "0", "0", "0"], 10, 7, 15, 3, 16),
        row!(["1/2", "-1/2", "-1/2", "-1/2", "-1/2", "1/2", H], 11, 5, 17),
        row!(["1", "0", "0", "0", "1", "0", "0"], 11, 7, 17, 4, 18),
        row!(["1", "0", "0", "0", "0", "1", "0"], 12, 7, 19),
        row!(["1", "0", "0", "0", "0", "-1", "0"], 12, 6, 20),
        row!(["1", "0", "0", "0", "-1", "0", "0"], 13, 6, 21, 5, 22),
        row!(["1", "0", "0", "-1", "0", "0", "0"], 14, 4, 23),
        row!(["1", "0", "-1", "0", "0", "0", "0"], 15, 3, 24),
        row!(["1", "-1", "0", "0", "0", "0", "0"], 16, 2, 25),
    ]
};

const E7_TOP: &[TableRow] = &{
    const H: &str = "1/2*sqrt2"; // 1/√2
    const M: &str = "-1/2*sqrt2"; // −1/√2
    macro_rules! row {
        ([$($c:expr),*], $len:expr) => {
            TableRow { coords: &[$($c),*], len: $len, edge: None, alt: None }
        };
        ([$($c:expr),*], $len:expr, $l:expr, $p:expr) => {
            TableRow { coords: &[$($c),*], len: $len, edge: Some(($l, $p)), alt: None }
        };
        ([$($c:expr),*], $len:expr, $l:expr, $p:expr, $l2:expr, $p2:expr) => {
            TableRow {
                coords: &[$($c),*],
                len: $len,
                edge: Some(($l, $p)),
                alt: Some(($l2, $p2)),
            }
        };
    }
    [
        row!(["1", "0", "0", "0", "0", "0", H], 0),
        row!(["0", "1", "0", "0", "0", "0", H], 1, 1, 0),
        row!(["0", "0", "1", "0", "0", "0", H], 2, 2, 1),
        row!(["0", "0", "0", "1", "0", "0", H], 3, 3, 2),
        row!(["0", "0", "0", "0", "1", "0", H], 4, 4, 3),
        row!(["0", "0", "0", "0", "0", "1", H], 5, 5, 4),
        row!(["0", "0", "0", "0", "0", "-1", H], 5, 6, 4),
        row!(["0", "0", "0", "0", "-1", "0", H], 6, 6, 5),
        row!(["1/2", "1/2", "1/2", "1/2", "1/2", "-1/2", "0"], 6, 7, 6),
        row!(["0", "0", "0", "-1", "0", "0", H], 7, 4, 7),
        row!(["1/2", "1/2", "1/2", "1/2", "-1/2", "1/2", "0"], 7, 5, 8),
        row!(["0", "0", "-1", "0", "0", "0", H], 8, 3, 9),
        row!(["1/2", "1/2", "1/2", "-1/2", "1/2", "1/2", "0"], 8, 4, 10),
        row!(["0", "-1", "0", "0", "0", "0", H], 9, 2, 11),
        row!(["1/2", "1/2", "-1/2", "1/2", "1/2", "1/2", "0"], 9, 3, 12),
        row!(["1/2", "1/2", "1/2", "-1/2", "-1/2", "-1/2", "0"], 9, 6, 12),
        row!(["-1", "0", "0", "0", "0", "0", H], 10, 1, 13),
        row!(["1/2", "-1/2", "1/2", "1/2", "1/2", "1/2", "0"], 10, 7, 13, 2, 14),
        row!(["1/2", "1/2", "-1/2", "1/2", "-1/2", "-1/2", "0"], 10, 3, 15),
        row!(["-1/2", "1/2", "1/2", "1/2", "1/2", "1/2", "0"], 11, 7, 16, 1, 17),
        row!(["1/2", "-1/2", "1/2", "1/2", "-1/2", "-1/2", "0"], 11, 6, 17, 2, 18),
        row!(["1/2", "1/2", "-1/2", "-1/2", "1/2", "-1/2", "0"], 11, 4, 18),
        row!(["-1/2", "1/2", "1/2", "1/2", "-1/2", "-1/2", "0"], 12, 6, 19, 1, 20),
        row!(["1/2", "-1/2", "1/2", "-1/2", "1/2", "-1/2", "0"], 12, 4, 20, 2, 21),
        row!(["1/2", "1/2", "-1/2", "-1/2", "-1/2", "1/2", "0"], 12, 5, 21),
        row!(["-1/2", "1/2", "1/2", "-1/2", "1/2", "-1/2", "0"], 13, 4, 22, 1, 23),
        row!(["1/2", "-1/2", "-1/2", "1/2", "1/2", "-1/2", "0"], 13, 3, 23),
        row!(["1/2", "-1/2", "1/2", "-1/2", "-1/2", "1/2", "0"], 13, 5, 23, 2, 24),
        row!(["-1/2", "1/2", "-1/2", "1/2", "1/2", "-1/2", "0"], 14, 3, 25, 1, 26),
        row!(["1/2", "-1/2", "-1/2", "1/2", "-1/2", "1/2", "0"], 14, 5, 26, 3, 27),
        row!(["-1/2", "1/2", "1/2", "-1/2", "-1/2", "1/2", "0"], 14, 1, 27),
        row!(["-1/2", "-1/2", "1/2", "1/2", "1/2", "-1/2", "0"], 15, 2, 28),
        row!(["1/2", "-1/2", "-1/2", "-1/2", "1/2", "1/2", "0"], 15, 4, 29),
        row!(["-1/2", "1/2", "-1/2", "1/2", "-1/2", "1/2", "0"], 15, 1, 29, 3, 30),
        row!(["-1/2", "-1/2", "1/2", "1/2", "-1/2", "1/2", "0"], 16, 5, 31, 2, 33),
        row!(["-1/2", "1/2", "-1/2", "-1/2", "1/2", "1/2", "0"], 16, 1, 32),
        row!(["1/2", "-1/2", "-1/2", "-1/2", "-1/2", "-1/2", "0"], 16, 6, 32),
        row!(["-1/2", "-1/2", "1/2", "-1/2", "1/2", "1/2", "0"], 17, 4, 34),
        row!(["-1/2", "1/2", "-1/2", "-1/2", "-1/2", "-1/2", "0"], 17, 6, 35),
        row!(["1", "0", "0", "0", "0", "0", M], 17, 7, 36),
        row!(["-1/2", "-1/2", "-1/2", "1/2", "1/2", "1/2", "0"], 18, 3, 37),
        row!(["-1/2", "-1/2", "1/2", "-1/2", "-1/2", "-1/2", "0"], 18, 2, 38),
        row!(["0", "1", "0", "0", "0", "0", M], 18, 1, 39),
        row!(["-1/2", "-1/2", "-1/2", "1/2", "-1/2", "-1/2", "0"], 19, 6, 40, 3, 41),
        row!(["0", "0", "1", "0", "0", "0", M], 19, 7, 41, 2, 42),
        row!(["0", "0", "0", "1", "0", "0", M], 20, 7, 43, 3, 44),
        row!(["-1/2", "-1/2", "-1/2", "-1/2", "1/2", "-1/2", "0"], 20, 4, 43),
        row!(["0", "0", "0", "0", "1", "0", M], 21, 4, 45),
        row!(["-1/2", "-1/2", "-1/2", "-1/2", "-1/2", "1/2", "0"], 21, 5, 46),
        row!(["0", "0", "0", "0", "0", "-1", M], 22, 6, 47),
        row!(["0", "0", "0", "0", "0", "1", M], 22, 7, 48),
        row!(["0", "0", "0", "0", "-1", "0", M], 23, 5, 49, 6, 50),
        row!(["0", "0", "0", "-1", "0", "0", M], 24, 4, 51),
        row!(["0", "0", "-1", "0", "0", "0", M], 25, 3, 52),
        row!(["0", "-1", "0", "0", "0", "0", M], 26, 2, 53),
        row!(["-1", "0", "0", "0", "0", "0", M], 27, 1, 54),
    ]
};
