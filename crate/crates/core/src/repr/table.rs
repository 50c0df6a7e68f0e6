use std::fmt;

use super::ReprError;

/// Largest arity a table may be built with.
pub const MAX_TABLE_ARITY: usize = 30;

/// Lookup table of a `k`-ary boolean function.
///
/// The entry for `(v_1, ..., v_k)` sits at index `Σ v_j 2^(k-j)`, so the
/// first argument is the most significant bit. The textual form lists
/// entries from index 0 upwards.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TruthTable {
    arity: usize,
    words: Vec<u64>,
}

impl TruthTable {
    pub fn from_fn<F: FnMut(usize) -> bool>(arity: usize, mut f: F) -> Self {
        assert!(arity <= MAX_TABLE_ARITY, "table arity {arity} too large");
        let len = 1usize << arity;
        let mut words = vec![0u64; len.div_ceil(64)];
        for idx in 0..len {
            if f(idx) {
                words[idx / 64] |= 1 << (idx % 64);
            }
        }
        TruthTable { arity, words }
    }

    pub fn from_bits(bits: &[bool]) -> Result<Self, ReprError> {
        let len = bits.len();
        if !len.is_power_of_two() {
            return Err(ReprError::TableLength(len));
        }
        let arity = len.trailing_zeros() as usize;
        Ok(TruthTable::from_fn(arity, |i| bits[i]))
    }

    /// Parses a `0`/`1` string whose length must be `2^arity`.
    pub fn parse(text: &str, arity: usize) -> Result<Self, ReprError> {
        if arity > MAX_TABLE_ARITY {
            return Err(ReprError::ArityCapExceeded {
                arity,
                cap: MAX_TABLE_ARITY,
            });
        }
        let bits = text
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(ReprError::TableChar(other)),
            })
            .collect::<Result<Vec<_>, _>>()?;
        if bits.len() != 1 << arity {
            return Err(ReprError::TableLengthForArity {
                len: bits.len(),
                arity,
            });
        }
        TruthTable::from_bits(&bits)
    }

    pub fn constant(arity: usize, value: bool) -> Self {
        TruthTable::from_fn(arity, |_| value)
    }

    /// The function returning argument `j` (0-based).
    pub fn projection(arity: usize, j: usize) -> Self {
        assert!(j < arity);
        TruthTable::from_fn(arity, |i| i >> (arity - 1 - j) & 1 == 1)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Number of entries, `2^arity`.
    pub fn len(&self) -> usize {
        1 << self.arity
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn get(&self, index: usize) -> bool {
        self.words[index / 64] >> (index % 64) & 1 == 1
    }

    pub fn index_of(args: &[bool]) -> usize {
        args.iter().fold(0, |acc, &b| acc << 1 | b as usize)
    }

    pub fn evaluate(&self, args: &[bool]) -> Result<bool, ReprError> {
        if args.len() != self.arity {
            return Err(ReprError::ArgumentCount {
                expected: self.arity,
                got: args.len(),
            });
        }
        Ok(self.get(TruthTable::index_of(args)))
    }

    /// Evaluates with argument `j` supplied by `arg(j)`.
    pub fn eval_with<F: Fn(usize) -> bool>(&self, arg: F) -> bool {
        let idx = (0..self.arity).fold(0, |acc, j| acc << 1 | arg(j) as usize);
        self.get(idx)
    }

    /// `t'(v) = ¬t(¬v)`.
    pub fn dual(&self) -> TruthTable {
        let mask = self.len() - 1;
        TruthTable::from_fn(self.arity, |i| !self.get(mask ^ i))
    }

    pub fn complement(&self) -> TruthTable {
        TruthTable::from_fn(self.arity, |i| !self.get(i))
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Indices `i` with `t(i) = value`, ascending.
    pub fn preimage(&self, value: bool) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(move |&i| self.get(i) == value)
    }

    /// Whether argument `j` (0-based) influences the value.
    pub fn depends_on(&self, j: usize) -> bool {
        let bit = 1 << (self.arity - 1 - j);
        (0..self.len()).any(|i| i & bit == 0 && self.get(i) != self.get(i | bit))
    }
}

impl fmt::Display for TruthTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = (0..self.len())
            .map(|i| if self.get(i) { '1' } else { '0' })
            .collect();
        f.write_str(&s)
    }
}

impl fmt::Debug for TruthTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruthTable({}, \"{}\")", self.arity, self)
    }
}
