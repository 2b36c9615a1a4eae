use std::fmt;

/// A generator or its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(generator: usize, inverse: bool) -> Self {
        Letter { generator, inverse }
    }

    pub fn inv(self) -> Self {
        Letter {
            generator: self.generator,
            inverse: !self.inverse,
        }
    }

    /// Column of this letter in a coset table: `2g` for `g`, `2g + 1` for `g^-1`.
    pub fn column(self) -> usize {
        2 * self.generator + usize::from(self.inverse)
    }
}

/// A word in the free group, read left to right. The empty word is the identity.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn identity() -> Self {
        Word::default()
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Word { letters }
    }

    /// Word consisting of `generator^exponent`.
    pub fn gen_pow(generator: usize, exponent: i64) -> Self {
        let letter = Letter::new(generator, exponent < 0);
        Word {
            letters: vec![letter; exponent.unsigned_abs() as usize],
        }
    }

    pub fn gen(generator: usize) -> Self {
        Word::gen_pow(generator, 1)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn mul(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word { letters }
    }

    pub fn inv(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|l| l.inv()).collect(),
        }
    }

    /// `self^k`; negative exponents invert first.
    pub fn pow(&self, k: i64) -> Word {
        let base = if k < 0 { self.inv() } else { self.clone() };
        let reps = k.unsigned_abs() as usize;
        let mut letters = Vec::with_capacity(base.len() * reps);
        for _ in 0..reps {
            letters.extend_from_slice(&base.letters);
        }
        Word { letters }
    }

    /// `self^g = g^-1 self g`.
    pub fn conj(&self, g: &Word) -> Word {
        g.inv().mul(self).mul(g)
    }

    /// `[u, v] = u^-1 v^-1 u v`.
    pub fn commutator(u: &Word, v: &Word) -> Word {
        u.inv().mul(&v.inv()).mul(u).mul(v)
    }

    /// Cancels adjacent `g g^-1` pairs until none remain.
    pub fn free_reduce(&self) -> Word {
        let mut out: Vec<Letter> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            if out.last() == Some(&l.inv()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word { letters: out }
    }

    /// Free reduction followed by removal of inverse pairs at the two ends.
    pub fn cyclic_reduce(&self) -> Word {
        let w = self.free_reduce();
        let ls = &w.letters;
        let (mut lo, mut hi) = (0, ls.len());
        while hi - lo >= 2 && ls[lo] == ls[hi - 1].inv() {
            lo += 1;
            hi -= 1;
        }
        Word {
            letters: ls[lo..hi].to_vec(),
        }
    }

    pub fn uses_only(&self, generator_count: usize) -> bool {
        self.letters.iter().all(|l| l.generator < generator_count)
    }

    /// Renders the word with run-length exponents, e.g. `a^2*b^-1*a`.
    pub fn display_with<'a>(&'a self, names: &'a [String]) -> WordDisplay<'a> {
        WordDisplay { word: self, names }
    }
}

pub struct WordDisplay<'a> {
    word: &'a Word,
    names: &'a [String],
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ls = self.word.letters();
        if ls.is_empty() {
            // empty product; `x^0` is rejected by the parser, so render through a trivial commutator
            let name = self.names.first().map(String::as_str).unwrap_or("1");
            return write!(f, "[{name},{name}]");
        }
        let mut i = 0;
        let mut first = true;
        while i < ls.len() {
            let mut j = i;
            while j < ls.len() && ls[j] == ls[i] {
                j += 1;
            }
            let run = (j - i) as i64;
            let exp = if ls[i].inverse { -run } else { run };
            if !first {
                f.write_str("*")?;
            }
            first = false;
            let name = &self.names[ls[i].generator];
            if exp == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{exp}")?;
            }
            i = j;
        }
        Ok(())
    }
}
