use std::collections::BTreeSet;
use std::fmt;

use super::Operator;

/// Formula over argument positions `0..arity`.
///
/// Textual variables are 1-based (`x1` is `Var(0)`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    Var(usize),
    Const(bool),
    Not(Box<Formula>),
    And(Vec<Formula>),
    Or(Vec<Formula>),
    Xor(Vec<Formula>),
    /// `(a ∧ b) ∨ (a ∧ c) ∨ (b ∧ c)`
    Maj(Box<[Formula; 3]>),
    /// `a ∨ (b ∧ c)`
    S00(Box<[Formula; 3]>),
    /// `a ∧ (b ∨ c)`
    S10(Box<[Formula; 3]>),
}

impl Formula {
    pub fn var(j: usize) -> Formula {
        Formula::Var(j)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn maj(a: Formula, b: Formula, c: Formula) -> Formula {
        Formula::Maj(Box::new([a, b, c]))
    }

    pub fn s00(a: Formula, b: Formula, c: Formula) -> Formula {
        Formula::S00(Box::new([a, b, c]))
    }

    pub fn s10(a: Formula, b: Formula, c: Formula) -> Formula {
        Formula::S10(Box::new([a, b, c]))
    }

    pub fn eval_with<F: Fn(usize) -> bool>(&self, arg: &F) -> bool {
        match self {
            Formula::Var(j) => arg(*j),
            Formula::Const(b) => *b,
            Formula::Not(g) => !g.eval_with(arg),
            Formula::And(cs) => cs.iter().all(|c| c.eval_with(arg)),
            Formula::Or(cs) => cs.iter().any(|c| c.eval_with(arg)),
            Formula::Xor(cs) => cs.iter().fold(false, |acc, c| acc ^ c.eval_with(arg)),
            Formula::Maj(t) => {
                let [a, b, c] = t.as_ref();
                let (a, b, c) = (a.eval_with(arg), b.eval_with(arg), c.eval_with(arg));
                (a && b) || (a && c) || (b && c)
            }
            Formula::S00(t) => {
                let [a, b, c] = t.as_ref();
                a.eval_with(arg) || (b.eval_with(arg) && c.eval_with(arg))
            }
            Formula::S10(t) => {
                let [a, b, c] = t.as_ref();
                a.eval_with(arg) && (b.eval_with(arg) || c.eval_with(arg))
            }
        }
    }

    pub fn children(&self) -> &[Formula] {
        match self {
            Formula::Var(_) | Formula::Const(_) => &[],
            Formula::Not(g) => std::slice::from_ref(g.as_ref()),
            Formula::And(cs) | Formula::Or(cs) | Formula::Xor(cs) => cs,
            Formula::Maj(t) | Formula::S00(t) | Formula::S10(t) => t.as_ref(),
        }
    }

    /// Number of AST nodes.
    pub fn size(&self) -> usize {
        1 + self.children().iter().map(Formula::size).sum::<usize>()
    }

    pub fn depth(&self) -> usize {
        1 + self
            .children()
            .iter()
            .map(Formula::depth)
            .max()
            .unwrap_or(0)
    }

    /// Variable indices that occur, ascending.
    pub fn vars(&self) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<usize>) {
        if let Formula::Var(j) = self {
            out.insert(*j);
        }
        for c in self.children() {
            c.collect_vars(out);
        }
    }

    pub fn max_var(&self) -> Option<usize> {
        self.vars().into_iter().next_back()
    }

    pub fn map_vars<F: Fn(usize) -> usize>(&self, map: &F) -> Formula {
        let all = |cs: &[Formula]| cs.iter().map(|c| c.map_vars(map)).collect::<Vec<_>>();
        let three = |t: &[Formula; 3]| {
            Box::new([t[0].map_vars(map), t[1].map_vars(map), t[2].map_vars(map)])
        };
        match self {
            Formula::Var(j) => Formula::Var(map(*j)),
            Formula::Const(b) => Formula::Const(*b),
            Formula::Not(g) => Formula::not(g.map_vars(map)),
            Formula::And(cs) => Formula::And(all(cs)),
            Formula::Or(cs) => Formula::Or(all(cs)),
            Formula::Xor(cs) => Formula::Xor(all(cs)),
            Formula::Maj(t) => Formula::Maj(three(t)),
            Formula::S00(t) => Formula::S00(three(t)),
            Formula::S10(t) => Formula::S10(three(t)),
        }
    }

    /// The dual formula, computing `¬f(¬v)`.
    ///
    /// And/Or and S00/S10 swap, constants flip and Maj is kept. An even
    /// Xor gains a negation, and a negated even Xor loses it, so applying
    /// this twice returns the original tree.
    pub fn dual(&self) -> Formula {
        let all = |cs: &[Formula]| cs.iter().map(Formula::dual).collect::<Vec<_>>();
        let three = |t: &[Formula; 3]| Box::new([t[0].dual(), t[1].dual(), t[2].dual()]);
        match self {
            Formula::Var(j) => Formula::Var(*j),
            Formula::Const(b) => Formula::Const(!b),
            Formula::Not(g) => match g.as_ref() {
                Formula::Xor(cs) if cs.len() % 2 == 0 => Formula::Xor(all(cs)),
                other => Formula::not(other.dual()),
            },
            Formula::And(cs) => Formula::Or(all(cs)),
            Formula::Or(cs) => Formula::And(all(cs)),
            Formula::Xor(cs) if cs.len() % 2 == 0 => Formula::not(Formula::Xor(all(cs))),
            Formula::Xor(cs) => Formula::Xor(all(cs)),
            Formula::Maj(t) => Formula::Maj(three(t)),
            Formula::S00(t) => Formula::S10(three(t)),
            Formula::S10(t) => Formula::S00(three(t)),
        }
    }

    pub fn operators(&self) -> BTreeSet<Operator> {
        let mut out = BTreeSet::new();
        self.collect_ops(&mut out);
        out
    }

    fn collect_ops(&self, out: &mut BTreeSet<Operator>) {
        let op = match self {
            Formula::Var(_) => None,
            Formula::Const(_) => Some(Operator::Const),
            Formula::Not(_) => Some(Operator::Not),
            Formula::And(_) => Some(Operator::And),
            Formula::Or(_) => Some(Operator::Or),
            Formula::Xor(_) => Some(Operator::Xor),
            Formula::Maj(_) => Some(Operator::Maj),
            Formula::S00(_) => Some(Operator::S00),
            Formula::S10(_) => Some(Operator::S10),
        };
        out.extend(op);
        for c in self.children() {
            c.collect_ops(out);
        }
    }

    fn infix(&self) -> Option<(&'static str, u8, &[Formula])> {
        match self {
            Formula::Or(cs) if cs.len() >= 2 => Some((" | ", 1, cs)),
            Formula::Xor(cs) if cs.len() >= 2 => Some((" ^ ", 2, cs)),
            Formula::And(cs) if cs.len() >= 2 => Some((" & ", 3, cs)),
            _ => None,
        }
    }
}

fn write_call(f: &mut fmt::Formatter<'_>, name: &str, args: &[Formula]) -> fmt::Result {
    write!(f, "{name}(")?;
    for (k, a) in args.iter().enumerate() {
        if k > 0 {
            f.write_str(", ")?;
        }
        write!(f, "{a}")?;
    }
    f.write_str(")")
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some((sep, prec, cs)) = self.infix() {
            for (k, c) in cs.iter().enumerate() {
                if k > 0 {
                    f.write_str(sep)?;
                }
                match c.infix() {
                    Some((_, p, _)) if p <= prec => write!(f, "({c})")?,
                    _ => write!(f, "{c}")?,
                }
            }
            return Ok(());
        }
        match self {
            Formula::Var(j) => write!(f, "x{}", j + 1),
            Formula::Const(b) => f.write_str(if *b { "1" } else { "0" }),
            Formula::Not(g) => match g.infix() {
                Some(_) => write!(f, "!({g})"),
                None => write!(f, "!{g}"),
            },
            Formula::And(cs) => write_call(f, "and", cs),
            Formula::Or(cs) => write_call(f, "or", cs),
            Formula::Xor(cs) => write_call(f, "xor", cs),
            Formula::Maj(t) => write_call(f, "maj", t.as_ref()),
            Formula::S00(t) => write_call(f, "s00", t.as_ref()),
            Formula::S10(t) => write_call(f, "s10", t.as_ref()),
        }
    }
}
