//! Parameter grids: "1..3" (inclusive), "2,4,6", "5", and "0..m" where the
//! bound `m` refers to the current value of m.

use std::collections::BTreeMap;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Bound {
    Num(u32),
    Var(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Piece {
    Single(Bound),
    Range(Bound, Bound),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grid {
    pieces: Vec<Piece>,
    text: String,
}

fn bound(s: &str) -> Result<Bound, String> {
    let s = s.trim();
    if s.is_empty() {
        return Err("empty bound".into());
    }
    if let Ok(v) = s.parse::<u32>() {
        return Ok(Bound::Num(v));
    }
    if s.chars().all(|c| c.is_ascii_alphabetic()) {
        return Ok(Bound::Var(s.to_string()));
    }
    Err(format!("bad bound {s:?}"))
}

impl Grid {
    pub fn parse(s: &str) -> Result<Self, String> {
        let mut pieces = Vec::new();
        for part in s.split(',') {
            let piece = match part.split_once("..") {
                Some((a, b)) => Piece::Range(bound(a)?, bound(b.trim_start_matches('='))?),
                None => Piece::Single(bound(part)?),
            };
            pieces.push(piece);
        }
        Ok(Grid {
            pieces,
            text: s.to_string(),
        })
    }

    /// Values in order of appearance, with variables taken from `vars`.
    pub fn values(&self, vars: &BTreeMap<&str, u32>) -> Result<Vec<u32>, String> {
        let get = |b: &Bound| match b {
            Bound::Num(v) => Ok(*v),
            Bound::Var(name) => vars
                .get(name.as_str())
                .copied()
                .ok_or_else(|| format!("unknown variable {name:?} in grid {:?}", self.text)),
        };
        let mut out = Vec::new();
        for p in &self.pieces {
            match p {
                Piece::Single(b) => out.push(get(b)?),
                Piece::Range(a, b) => out.extend(get(a)?..=get(b)?),
            }
        }
        Ok(out)
    }

    pub fn constants(&self) -> Result<Vec<u32>, String> {
        self.values(&BTreeMap::new())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn forms() {
        assert_eq!(Grid::parse("1..3").unwrap().constants().unwrap(), vec![1, 2, 3]);
        assert_eq!(Grid::parse("2,4,6").unwrap().constants().unwrap(), vec![2, 4, 6]);
        assert_eq!(Grid::parse("5").unwrap().constants().unwrap(), vec![5]);
        assert_eq!(Grid::parse("1..2,7").unwrap().constants().unwrap(), vec![1, 2, 7]);
        let g = Grid::parse("0..m").unwrap();
        assert!(g.constants().is_err());
        let vars = BTreeMap::from([("m", 2)]);
        assert_eq!(g.values(&vars).unwrap(), vec![0, 1, 2]);
        assert!(Grid::parse("1..").is_err());
        assert!(Grid::parse("x-1").is_err());
    }
}
