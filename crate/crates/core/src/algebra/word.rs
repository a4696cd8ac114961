//! Run-length encoded monomials.

use smallvec::SmallVec;

/// Index of a generator inside its preset; equals its rank in the total order.
pub type GenId = u16;

/// A monomial: a sequence of `(generator, nonzero exponent)` runs with no two
/// adjacent runs on the same generator. The empty word is the unit.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Word(SmallVec<[(GenId, i32); 6]>);

impl Word {
    pub fn one() -> Self {
        Word(SmallVec::new())
    }

    pub fn letter(g: GenId, e: i32) -> Self {
        let mut w = Word::one();
        w.push(g, e);
        w
    }

    pub fn from_runs(runs: &[(GenId, i32)]) -> Self {
        let mut w = Word::one();
        for &(g, e) in runs {
            w.push(g, e);
        }
        w
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn runs(&self) -> &[(GenId, i32)] {
        &self.0
    }

    /// Appends `g^e`, merging with (and possibly cancelling) the last run.
    pub fn push(&mut self, g: GenId, e: i32) {
        if e == 0 {
            return;
        }
        if let Some(last) = self.0.last_mut() {
            if last.0 == g {
                last.1 += e;
                if last.1 == 0 {
                    self.0.pop();
                }
                return;
            }
        }
        self.0.push((g, e));
    }

    pub fn extend(&mut self, other: &Word) {
        for &(g, e) in &other.0 {
            self.push(g, e);
        }
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut w = self.clone();
        w.extend(other);
        w
    }

    /// Total number of letters, counting `|exponent|`.
    pub fn len(&self) -> usize {
        self.0.iter().map(|&(_, e)| e.unsigned_abs() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, g: GenId) -> bool {
        self.0.iter().any(|&(h, _)| h == g)
    }

    /// Letters with the order reversed (runs keep their exponents).
    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn runs_merge_and_cancel() {
        let mut w = Word::from_runs(&[(1, 2), (2, 1)]);
        w.push(2, -1);
        assert_eq!(w, Word::letter(1, 2));
        w.push(1, -2);
        assert!(w.is_one());
        let a = Word::from_runs(&[(0, 1), (3, -1)]);
        let b = Word::from_runs(&[(3, 1), (4, 2)]);
        assert_eq!(a.concat(&b), Word::from_runs(&[(0, 1), (4, 2)]));
        assert_eq!(a.concat(&b).len(), 3);
    }
}
