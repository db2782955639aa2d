//! Braid words over the two B3 generators of the Fibonacci representation.

use std::fmt;
use std::str::FromStr;

use crate::error::Error;
use crate::quat::{Quaternion, Su2Matrix, UnitQuaternion};

/// Inverse golden mean `(sqrt(5) - 1) / 2`.
pub const TAU: f64 = 0.618_033_988_749_894_9;

/// Golden mean `(sqrt(5) + 1) / 2`.
pub const PHI: f64 = 1.618_033_988_749_895;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BraidLetter {
    S1,
    S1Inv,
    S2,
    S2Inv,
}

impl BraidLetter {
    pub const ALL: [BraidLetter; 4] = [
        BraidLetter::S1,
        BraidLetter::S1Inv,
        BraidLetter::S2,
        BraidLetter::S2Inv,
    ];

    pub fn new(generator: u8, positive: bool) -> Self {
        match (generator, positive) {
            (1, true) => BraidLetter::S1,
            (1, false) => BraidLetter::S1Inv,
            (2, true) => BraidLetter::S2,
            (2, false) => BraidLetter::S2Inv,
            _ => panic!("generator must be 1 or 2"),
        }
    }

    pub fn generator(self) -> u8 {
        match self {
            BraidLetter::S1 | BraidLetter::S1Inv => 1,
            BraidLetter::S2 | BraidLetter::S2Inv => 2,
        }
    }

    pub fn sign(self) -> i8 {
        match self {
            BraidLetter::S1 | BraidLetter::S2 => 1,
            BraidLetter::S1Inv | BraidLetter::S2Inv => -1,
        }
    }

    pub fn inverse(self) -> Self {
        match self {
            BraidLetter::S1 => BraidLetter::S1Inv,
            BraidLetter::S1Inv => BraidLetter::S1,
            BraidLetter::S2 => BraidLetter::S2Inv,
            BraidLetter::S2Inv => BraidLetter::S2,
        }
    }

    /// Two-bit code used by packed words.
    pub fn code(self) -> u8 {
        self as u8
    }

    pub fn from_code(c: u8) -> Self {
        Self::ALL[(c & 3) as usize]
    }

    pub fn quat(self) -> UnitQuaternion {
        FibGenerators::get().letter(self)
    }
}

impl fmt::Display for BraidLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.sign() as i32 * self.generator() as i32)
    }
}

/// The Fibonacci representation of B3:
/// `sigma1 = diag(e^{-7i pi/10}, e^{7i pi/10})` and
/// `sigma2 = [[-tau e^{-i pi/10}, -i sqrt(tau)], [-i sqrt(tau), -tau e^{i pi/10}]]`.
#[derive(Clone, Copy, Debug)]
pub struct FibGenerators {
    pub sigma1: UnitQuaternion,
    pub sigma2: UnitQuaternion,
    pub tau: f64,
}

static GENERATORS: std::sync::OnceLock<FibGenerators> = std::sync::OnceLock::new();

impl FibGenerators {
    pub fn get() -> &'static FibGenerators {
        GENERATORS.get_or_init(|| {
            let a = 7.0 * std::f64::consts::PI / 10.0;
            let b = std::f64::consts::PI / 10.0;
            let sigma1 =
                UnitQuaternion::new_unchecked(Quaternion::new(a.cos(), -a.sin(), 0.0, 0.0));
            let sigma2 = UnitQuaternion::new_unchecked(Quaternion::new(
                -TAU * b.cos(),
                TAU * b.sin(),
                0.0,
                -TAU.sqrt(),
            ));
            FibGenerators {
                sigma1,
                sigma2,
                tau: TAU,
            }
        })
    }

    pub fn letter(&self, l: BraidLetter) -> UnitQuaternion {
        match l {
            BraidLetter::S1 => self.sigma1,
            BraidLetter::S1Inv => self.sigma1.conj(),
            BraidLetter::S2 => self.sigma2,
            BraidLetter::S2Inv => self.sigma2.conj(),
        }
    }
}

/// The generator `sigma_i` (`positive`) or its inverse.
pub fn sigma(i: u8, positive: bool) -> Su2Matrix {
    BraidLetter::new(i, positive).quat().to_su2()
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BraidWord {
    letters: Vec<BraidLetter>,
}

impl BraidWord {
    pub fn empty() -> Self {
        BraidWord {
            letters: Vec::new(),
        }
    }

    pub fn from_letters(letters: Vec<BraidLetter>) -> Self {
        BraidWord { letters }
    }

    pub fn letters(&self) -> &[BraidLetter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn push(&mut self, l: BraidLetter) {
        self.letters.push(l);
    }

    pub fn extend_from(&mut self, other: &BraidWord) {
        self.letters.extend_from_slice(&other.letters);
    }

    pub fn concat(&self, other: &BraidWord) -> BraidWord {
        let mut w = self.clone();
        w.extend_from(other);
        w
    }

    pub fn power(&self, n: usize) -> BraidWord {
        let mut w = BraidWord::empty();
        for _ in 0..n {
            w.extend_from(self);
        }
        w
    }

    /// Matrix of the braid. Letters act in reading order on a column state,
    /// so the product is taken right to left: `w1 w2 ... wn -> Mn ... M2 M1`.
    pub fn evaluate(&self) -> Su2Matrix {
        self.evaluate_quat().to_su2()
    }

    pub fn evaluate_quat(&self) -> UnitQuaternion {
        evaluate_letters(&self.letters)
    }

    /// Reversed word with every letter inverted.
    pub fn invert(&self) -> BraidWord {
        BraidWord {
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    pub fn is_freely_reduced(&self) -> bool {
        self.letters.windows(2).all(|w| w[0] != w[1].inverse())
    }

    /// Free reduction followed by folding every run `sigma_i^k` into
    /// `k in (-5, 5]` with `sigma_i^10 = -1`. Returns the word together with
    /// the accumulated central sign.
    pub fn normalize(&self) -> (BraidWord, i8) {
        // Stack of runs (generator, exponent); exponents stay in -4..=5.
        let mut runs: Vec<(u8, i64)> = Vec::new();
        let mut sign = 1i8;
        for l in &self.letters {
            let (g, k) = (l.generator(), l.sign() as i64);
            match runs.last_mut() {
                Some(top) if top.0 == g => top.1 += k,
                _ => runs.push((g, k)),
            }
            let top = runs.last_mut().expect("just pushed");
            if top.1 > 5 {
                top.1 -= 10;
                sign = -sign;
            } else if top.1 < -4 {
                top.1 += 10;
                sign = -sign;
            }
            if top.1 == 0 {
                runs.pop();
            }
        }
        let mut letters = Vec::new();
        for (g, k) in runs {
            let l = BraidLetter::new(g, k > 0);
            letters.extend(std::iter::repeat_n(l, k.unsigned_abs() as usize));
        }
        (BraidWord { letters }, sign)
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

pub fn evaluate_letters(letters: &[BraidLetter]) -> UnitQuaternion {
    let gens = FibGenerators::get();
    let mut m = UnitQuaternion::IDENTITY;
    for &l in letters {
        m = gens.letter(l) * m;
    }
    m
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromStr for BraidWord {
    type Err = Error;

    /// Whitespace separated signed generator indices, e.g. `"2 2 -1 1"`.
    fn from_str(s: &str) -> Result<Self, Error> {
        let letters = s
            .split_whitespace()
            .map(|tok| match tok {
                "1" | "+1" => Ok(BraidLetter::S1),
                "-1" => Ok(BraidLetter::S1Inv),
                "2" | "+2" => Ok(BraidLetter::S2),
                "-2" => Ok(BraidLetter::S2Inv),
                other => Err(Error::BadLetter(other.to_string())),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(BraidWord { letters })
    }
}

/// Freely reduced word of at most 29 letters packed in a `u64`: two bits per
/// letter from the low end, the length in the top six bits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct PackedWord(u64);

impl PackedWord {
    pub const MAX_LEN: usize = 29;

    pub fn pack(letters: &[BraidLetter]) -> Self {
        assert!(letters.len() <= Self::MAX_LEN);
        let mut v = 0u64;
        for (i, l) in letters.iter().enumerate() {
            v |= (l.code() as u64) << (2 * i);
        }
        PackedWord(v | ((letters.len() as u64) << 58))
    }

    pub fn len(self) -> usize {
        (self.0 >> 58) as usize
    }

    pub fn is_empty(self) -> bool {
        self.len() == 0
    }

    pub fn unpack(self) -> BraidWord {
        let letters = (0..self.len())
            .map(|i| BraidLetter::from_code(((self.0 >> (2 * i)) & 3) as u8))
            .collect();
        BraidWord::from_letters(letters)
    }

    /// Orders shorter words first, then by letter codes read left to right.
    pub fn order_key(self) -> (usize, u64) {
        let n = self.len();
        let mut lex = 0u64;
        for i in 0..n {
            lex = (lex << 2) | ((self.0 >> (2 * i)) & 3);
        }
        (n, lex)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quat::{distance, max_entry_diff};
    use num_complex::Complex64;
    use proptest::prelude::*;

    const S_TILDE: &str = "2 2 -1 -1 -1 2 2 -1 2 1";

    fn w(s: &str) -> BraidWord {
        s.parse().unwrap()
    }

    #[test]
    fn generator_entries() {
        let s1 = sigma(1, true);
        let e = s1.entry(1, 1);
        assert!((e - Complex64::new(-0.587785, -0.809017)).norm() < 1e-6);
        assert!((e - Complex64::from_polar(1.0, -0.7 * std::f64::consts::PI)).norm() < 1e-15);
        let s2 = sigma(2, true);
        assert!((s2.entry(1, 2) - Complex64::new(0.0, -TAU.sqrt())).norm() < 1e-15);
        assert!((s2.entry(2, 1) - Complex64::new(0.0, -TAU.sqrt())).norm() < 1e-15);
        let id = BraidLetter::S1.quat() * BraidLetter::S1Inv.quat();
        assert!(id.quat().max_abs_diff(UnitQuaternion::IDENTITY.quat()) < 1e-15);
        for m in [s1, s2] {
            assert!((m.determinant() - 1.0).abs() < 1e-14);
        }
        assert!((TAU * TAU + TAU - 1.0).abs() < 1e-15);
    }

    #[test]
    fn braid_relation_and_order_ten() {
        let a = w("1 2 1").evaluate();
        let b = w("2 1 2").evaluate();
        assert!(a.max_entry_diff(&b.entries()) < 1e-12);
        let minus = UnitQuaternion::IDENTITY
            .to_su2()
            .entries()
            .map(|r| r.map(|c| -c));
        assert!(w("1").power(10).evaluate().max_entry_diff(&minus) < 1e-12);
        assert!(w("2").power(10).evaluate().max_entry_diff(&minus) < 1e-12);
        assert_eq!(BraidWord::empty().evaluate(), Su2Matrix::IDENTITY);
    }

    #[test]
    fn pseudo_generator_fixture_pins_evaluation_order() {
        let m = w(S_TILDE).evaluate();
        assert!((m.entry(1, 1) - Complex64::new(0.5, -0.706298)).norm() < 5e-7);
        assert!((m.entry(1, 2) - Complex64::new(-0.428519, -0.2598349)).norm() < 5e-7);
    }

    #[test]
    fn concatenation_reverses_product() {
        let u = w("1 2 -1");
        let v = w("2 2 -1 2");
        let lhs = u.concat(&v).evaluate_quat();
        let rhs = v.evaluate_quat() * u.evaluate_quat();
        assert!(lhs.quat().max_abs_diff(rhs.quat()) < 1e-15);
    }

    #[test]
    fn invert_examples() {
        assert_eq!(w("1 2").invert(), w("-2 -1"));
        assert_eq!(BraidWord::empty().invert(), BraidWord::empty());
        let m = w(S_TILDE).evaluate().entries();
        let adj = [
            [m[0][0].conj(), m[1][0].conj()],
            [m[0][1].conj(), m[1][1].conj()],
        ];
        let inv = w(S_TILDE).invert().evaluate().entries();
        assert!(max_entry_diff(&adj, &inv) < 1e-12);
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(w("1 -1").normalize(), (BraidWord::empty(), 1));
        assert_eq!(w("1").power(10).normalize(), (BraidWord::empty(), -1));
        let (n, s) = w("2").power(7).normalize();
        assert_eq!((n.clone(), s), (w("-2 -2 -2"), -1));
        let lhs = w("2").power(7).evaluate_quat();
        let rhs = -n.evaluate_quat();
        assert!(lhs.quat().max_abs_diff(rhs.quat()) < 1e-12);
        // cancellation exposing a long run
        let (n, s) = w("1 1 1 2 -2 1 1 1").normalize();
        assert_eq!((n, s), (w("-1 -1 -1 -1"), -1));
    }

    #[test]
    fn text_format() {
        assert_eq!(w(S_TILDE).to_string(), S_TILDE);
        assert_eq!(w("").len(), 0);
        assert!("1 3".parse::<BraidWord>().is_err());
    }

    fn word_strategy(max: usize) -> impl Strategy<Value = BraidWord> {
        prop::collection::vec(0u8..4, 0..max).prop_map(|v| {
            BraidWord::from_letters(v.into_iter().map(BraidLetter::from_code).collect())
        })
    }

    proptest! {
        #[test]
        fn normalize_preserves_element(word in word_strategy(40)) {
            let (n, sign) = word.normalize();
            prop_assert!(n.is_freely_reduced());
            let a = word.evaluate_quat();
            let b = n.evaluate_quat();
            let b = if sign < 0 { -b } else { b };
            prop_assert!(a.quat().max_abs_diff(b.quat()) < 1e-12);
            prop_assert!(distance(a, n.evaluate_quat()) < 1e-7);
        }

        #[test]
        fn invert_is_matrix_inverse(word in word_strategy(30)) {
            let p = word.evaluate_quat() * word.invert().evaluate_quat();
            prop_assert!(p.quat().max_abs_diff(UnitQuaternion::IDENTITY.quat()) < 1e-12);
        }

        #[test]
        fn packed_round_trip(word in word_strategy(29)) {
            let p = PackedWord::pack(word.letters());
            prop_assert_eq!(p.unpack(), word);
        }
    }
}
