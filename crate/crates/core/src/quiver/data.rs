//! Built-in quivers for the A2, C2, A3 and C3 wiring diagrams.
//!
//! Convention: `i>j` is a solid arrow (σ_ij += 1), `i~j` a dashed arrow
//! (σ_ij += 1/2). Two dashed arrows in the same direction add up to a solid
//! one. Weights list d_1..d_n.

use super::{Seed, WeightedQuiver};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BuiltinQuiver {
    J121,
    J212,
    J1212,
    J2121,
    B2ofC2,
    B3ofC2,
    J123121,
    J321323,
    J123123123,
    J321321321,
}

pub const ALL_BUILTINS: [BuiltinQuiver; 10] = [
    BuiltinQuiver::J121,
    BuiltinQuiver::J212,
    BuiltinQuiver::J1212,
    BuiltinQuiver::J2121,
    BuiltinQuiver::B2ofC2,
    BuiltinQuiver::B3ofC2,
    BuiltinQuiver::J123121,
    BuiltinQuiver::J321323,
    BuiltinQuiver::J123123123,
    BuiltinQuiver::J321321321,
];

const QUIVERS: &str = "
J121       | 1 1 1 1 1         | 3>4 4>1 1>2 2>4 4>5 1~3 5~2
J212       | 1 1 1 1 1         | 1>4 4>2 3>5 5>4 4>3 3~1 2~5
J1212      | 2 2 2 1 1 1       | 4>5 5>6 1>2 2>3 2>5 5>1 6>2 1~4 3~6
J2121      | 2 2 2 1 1 1       | 4>5 5>6 1>2 2>3 5>2 2>4 3>5 4~1 6~3
B2ofC2     | 2 2 2 1 1 1       | 4>5 6>5 2>1 3>2 1>3 2>6 5>2 1~4 6~3
B3ofC2     | 2 2 2 1 1 1       | 5>4 5>6 2>1 3>2 1>3 2>5 4>2 1~4 6~3
J123121    | 1 1 1 1 1 1 1 1 1 | 1>2 3>4 4>5 6>7 7>8 8>9 5>8 8>4 4>7 7>3 2>4 4>1 9~5 5~2 1~3 3~6
J321323    | 1 1 1 1 1 1 1 1 1 | 1>7 7>8 8>2 3>4 4>5 6>9 9>4 4>6 5>8 8>4 4>7 7>3 2~5 5~9 6~3 3~1
J123123123 | 2 2 2 2 1 1 1 1 1 1 1 1 | 1>2 2>3 3>4 5>6 6>7 7>8 9>10 10>11 11>12 8>3 3>7 7>2 2>6 6>1 12>7 7>11 11>6 6>10 10>5 4~8 1~5 5~9 8~12
J321321321 | 2 2 2 2 1 1 1 1 1 1 1 1 | 1>2 2>3 3>4 5>6 6>7 7>8 9>10 10>11 11>12 4>7 7>3 3>6 6>2 2>5 8>11 11>7 7>10 10>6 6>9 8~4 5~1 9~5 12~8
";

impl BuiltinQuiver {
    pub fn name(self) -> &'static str {
        match self {
            BuiltinQuiver::J121 => "J121",
            BuiltinQuiver::J212 => "J212",
            BuiltinQuiver::J1212 => "J1212",
            BuiltinQuiver::J2121 => "J2121",
            BuiltinQuiver::B2ofC2 => "B2ofC2",
            BuiltinQuiver::B3ofC2 => "B3ofC2",
            BuiltinQuiver::J123121 => "J123121",
            BuiltinQuiver::J321323 => "J321323",
            BuiltinQuiver::J123123123 => "J123123123",
            BuiltinQuiver::J321321321 => "J321321321",
        }
    }
}

impl FromStr for BuiltinQuiver {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        ALL_BUILTINS
            .iter()
            .copied()
            .find(|q| q.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownName(s.to_string()))
    }
}

fn parse_pair(tok: &str, sep: char) -> (usize, usize) {
    let (a, b) = tok.split_once(sep).expect("arrow token");
    (a.parse().expect("vertex"), b.parse().expect("vertex"))
}

pub fn builtin_weighted(q: BuiltinQuiver) -> WeightedQuiver {
    let line = QUIVERS
        .lines()
        .find(|l| l.split('|').next().map(str::trim) == Some(q.name()))
        .expect("quiver table entry");
    let mut parts = line.split('|').skip(1);
    let d: Vec<i64> = parts.next().unwrap().split_whitespace().map(|x| x.parse().unwrap()).collect();
    let mut solid = Vec::new();
    let mut dashed = Vec::new();
    for tok in parts.next().unwrap().split_whitespace() {
        if tok.contains('>') {
            solid.push(parse_pair(tok, '>'));
        } else {
            dashed.push(parse_pair(tok, '~'));
        }
    }
    WeightedQuiver::from_arrows(d, &solid, &dashed)
}

pub fn builtin_quiver(q: BuiltinQuiver) -> Seed {
    builtin_weighted(q).to_seed().expect("built-in quiver is a valid seed")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_builtins_valid() {
        for q in ALL_BUILTINS {
            let s = builtin_quiver(q);
            s.validate().unwrap();
            assert_eq!(WeightedQuiver::from_seed(&s), builtin_weighted(q));
        }
    }

    #[test]
    fn names_roundtrip() {
        for q in ALL_BUILTINS {
            assert_eq!(q.name().parse::<BuiltinQuiver>().unwrap(), q);
        }
        assert!("J999".parse::<BuiltinQuiver>().is_err());
    }

    #[test]
    fn j121_entries() {
        let s = builtin_quiver(BuiltinQuiver::J121);
        assert_eq!(s.b(1, 3), (1, 2));
        assert_eq!(s.b(4, 5), (1, 1));
        assert_eq!(s.b(2, 4), (1, 1));
    }
}
