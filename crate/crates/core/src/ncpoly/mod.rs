//! Noncommutative `*`-polynomials: words over starred letters with complex
//! coefficients.
//!
//! Concrete syntax (whitespace is ignored):
//!
//! ```text
//! poly   := ['+' | '-'] term (('+' | '-') term)*
//! term   := coeff ['*' factor ('*' factor)*] | factor ('*' factor)*
//! factor := var ["'"] ['^' posint]
//! var    := 'x' posint
//! coeff  := real | '(' ['-'] real ('+' | '-') real 'i' ')'
//! ```
//!
//! `x2'` is the adjoint of `x2`, and `x1'^2` means `(x1*)²`. A bare
//! coefficient is the constant term, evaluated as that multiple of the
//! identity. [`Polynomial`]'s `Display` prints this same grammar.

mod display;
mod parse;

use alloc::collections::btree_map::Entry;
use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::matkernel::Matrix;
use crate::{Error, Result, C64};

pub use parse::parse;

/// A variable `x_k` or its adjoint `x_k*`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    var: usize,
    starred: bool,
}

impl Letter {
    /// `var` is 1-based; panics on 0.
    pub fn new(var: usize, starred: bool) -> Self {
        assert!(var >= 1, "variable indices are 1-based");
        Self { var, starred }
    }

    pub fn var(var: usize) -> Self {
        Self::new(var, false)
    }

    pub fn star(var: usize) -> Self {
        Self::new(var, true)
    }

    pub fn var_index(self) -> usize {
        self.var
    }

    pub fn is_starred(self) -> bool {
        self.starred
    }

    pub fn adjoint(self) -> Self {
        Self {
            var: self.var,
            starred: !self.starred,
        }
    }
}

/// Ordered product of letters; the empty word is the unit monomial.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Self(letters)
    }

    pub fn unit() -> Self {
        Self(Vec::new())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    /// Reversed word with every star flipped.
    pub fn adjoint(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.adjoint()).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.0.clone();
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    /// Variable indices with stars erased.
    pub fn var_indices(&self) -> Vec<usize> {
        self.0.iter().map(|l| l.var).collect()
    }
}

impl From<Vec<Letter>> for Word {
    fn from(v: Vec<Letter>) -> Self {
        Word(v)
    }
}

/// Finitely supported map from words to nonzero complex coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial {
    num_vars: usize,
    terms: BTreeMap<Word, C64>,
}

impl Polynomial {
    pub fn zero(num_vars: usize) -> Result<Self> {
        if num_vars == 0 {
            return Err(Error::InvalidParameter("number of variables must be positive"));
        }
        Ok(Self {
            num_vars,
            terms: BTreeMap::new(),
        })
    }

    /// Builds a polynomial, combining like terms and dropping zeros.
    pub fn from_terms(num_vars: usize, terms: impl IntoIterator<Item = (Word, C64)>) -> Result<Self> {
        let mut p = Self::zero(num_vars)?;
        for (w, c) in terms {
            p.add_term(w, c)?;
        }
        Ok(p)
    }

    pub fn add_term(&mut self, word: Word, coeff: C64) -> Result<()> {
        if !coeff.re.is_finite() || !coeff.im.is_finite() {
            return Err(Error::NonFinite);
        }
        if let Some(l) = word.0.iter().find(|l| l.var > self.num_vars) {
            return Err(Error::VariableOutOfRange {
                index: l.var,
                num_vars: self.num_vars,
            });
        }
        let zero = C64::new(0.0, 0.0);
        match self.terms.entry(word) {
            Entry::Vacant(slot) => {
                if coeff != zero {
                    slot.insert(coeff);
                }
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += coeff;
                if *slot.get() == zero {
                    slot.remove();
                }
            }
        }
        Ok(())
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Maximum word length; 0 for constants and for the zero polynomial.
    pub fn degree(&self) -> usize {
        self.terms.keys().map(Word::degree).max().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &C64)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, w: &Word) -> C64 {
        self.terms.get(w).copied().unwrap_or(C64::new(0.0, 0.0))
    }

    pub fn max_coefficient_modulus(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// The `*`-involution: reverse words, flip stars, conjugate coefficients.
    pub fn adjoint(&self) -> Polynomial {
        Polynomial {
            num_vars: self.num_vars,
            terms: self.terms.iter().map(|(w, c)| (w.adjoint(), c.conj())).collect(),
        }
    }

    /// `true` if `p* = p` up to `tol` per coefficient.
    pub fn is_selfadjoint(&self, tol: f64) -> bool {
        let adj = self.adjoint();
        let words = self.terms.keys().chain(adj.terms.keys());
        for w in words {
            if (self.coefficient(w) - adj.coefficient(w)).norm() > tol {
                return false;
            }
        }
        true
    }

    pub fn scale(&self, s: C64) -> Polynomial {
        let mut out = Polynomial {
            num_vars: self.num_vars,
            terms: BTreeMap::new(),
        };
        for (w, c) in &self.terms {
            let v = c * s;
            if v != C64::new(0.0, 0.0) {
                out.terms.insert(w.clone(), v);
            }
        }
        out
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        let mut out = self.clone();
        out.num_vars = self.num_vars.max(other.num_vars);
        for (w, c) in &other.terms {
            out.add_term(w.clone(), *c)?;
        }
        Ok(out)
    }

    /// Divides all coefficients by the largest modulus when it exceeds 1.
    pub fn normalize_coefficients(&self) -> Polynomial {
        let m = self.max_coefficient_modulus();
        if m > 1.0 {
            self.scale(C64::new(1.0 / m, 0.0))
        } else {
            self.clone()
        }
    }

    fn check_inputs(&self, xs: &[Matrix]) -> Result<usize> {
        if xs.len() != self.num_vars {
            return Err(Error::ArityMismatch {
                expected: self.num_vars,
                found: xs.len(),
            });
        }
        let n = xs[0].require_square()?;
        for x in xs {
            if x.rows() != n || x.cols() != n {
                return Err(Error::ShapeMismatch {
                    expected: (n, n),
                    found: (x.rows(), x.cols()),
                });
            }
        }
        Ok(n)
    }

    /// `P(X_1, …, X_m)`. Starred letters use the conjugate transpose.
    pub fn evaluate(&self, xs: &[Matrix]) -> Result<Matrix> {
        let n = self.check_inputs(xs)?;
        let ops = LetterOperands::new(xs, self);
        let mut acc = Matrix::zeros(n, n);
        for (w, c) in &self.terms {
            match ops.word_product(w)? {
                Some(m) => acc.add_scaled(*c, &m)?,
                None => {
                    for i in 0..n {
                        acc[(i, i)] += c;
                    }
                }
            }
        }
        Ok(acc)
    }

    /// `tr P(X_1, …, X_m)`, skipping the last matrix product of each word.
    pub fn trace_evaluate(&self, xs: &[Matrix]) -> Result<C64> {
        let n = self.check_inputs(xs)?;
        let ops = LetterOperands::new(xs, self);
        let mut acc = C64::new(0.0, 0.0);
        for (w, c) in &self.terms {
            let letters = w.letters();
            let t = match letters.len() {
                0 => C64::new(n as f64, 0.0),
                1 => ops.get(letters[0]).trace()?,
                len => {
                    let head = ops.word_product(&Word(letters[..len - 1].to_vec()))?;
                    let head = head.expect("non-empty prefix");
                    head.trace_of_product(ops.get(letters[len - 1]))?
                }
            };
            acc += c * t;
        }
        Ok(acc)
    }
}

/// Matrices and (lazily required) adjoints addressed by letter.
struct LetterOperands<'a> {
    plain: &'a [Matrix],
    adjoints: Vec<Option<Matrix>>,
}

impl<'a> LetterOperands<'a> {
    fn new(xs: &'a [Matrix], p: &Polynomial) -> Self {
        let mut need = alloc::vec![false; xs.len()];
        for w in p.terms.keys() {
            for l in w.letters() {
                if l.starred {
                    need[l.var - 1] = true;
                }
            }
        }
        let adjoints = xs
            .iter()
            .zip(need)
            .map(|(x, needed)| needed.then(|| x.adjoint()))
            .collect();
        Self { plain: xs, adjoints }
    }

    fn get(&self, l: Letter) -> &Matrix {
        if l.starred {
            self.adjoints[l.var - 1].as_ref().expect("adjoint prepared")
        } else {
            &self.plain[l.var - 1]
        }
    }

    /// `None` for the unit word.
    fn word_product(&self, w: &Word) -> Result<Option<Matrix>> {
        let mut it = w.letters().iter();
        let Some(&first) = it.next() else {
            return Ok(None);
        };
        let mut acc = self.get(first).clone();
        for &l in it {
            acc = acc.try_mul(self.get(l))?;
        }
        Ok(Some(acc))
    }
}
