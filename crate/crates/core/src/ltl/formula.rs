use std::collections::BTreeSet;
use std::fmt;

/// LTL over atomic propositions. `F`, `G`, `->` and `<->` are expanded when
/// formulas are built, so this type only carries the core connectives.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Ltl {
    True,
    False,
    Atom(String),
    Not(Box<Ltl>),
    And(Box<Ltl>, Box<Ltl>),
    Or(Box<Ltl>, Box<Ltl>),
    Next(Box<Ltl>),
    Until(Box<Ltl>, Box<Ltl>),
}

impl Ltl {
    pub fn atom(name: &str) -> Ltl {
        Ltl::Atom(name.to_string())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Ltl) -> Ltl {
        Ltl::Not(Box::new(f))
    }

    pub fn and(a: Ltl, b: Ltl) -> Ltl {
        Ltl::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Ltl, b: Ltl) -> Ltl {
        Ltl::Or(Box::new(a), Box::new(b))
    }

    pub fn next(f: Ltl) -> Ltl {
        Ltl::Next(Box::new(f))
    }

    pub fn until(a: Ltl, b: Ltl) -> Ltl {
        Ltl::Until(Box::new(a), Box::new(b))
    }

    /// `F f = true U f`
    pub fn eventually(f: Ltl) -> Ltl {
        Ltl::until(Ltl::True, f)
    }

    /// `G f = !F !f`
    pub fn always(f: Ltl) -> Ltl {
        Ltl::not(Ltl::eventually(Ltl::not(f)))
    }

    pub fn implies(a: Ltl, b: Ltl) -> Ltl {
        Ltl::or(Ltl::not(a), b)
    }

    pub fn iff(a: Ltl, b: Ltl) -> Ltl {
        Ltl::or(
            Ltl::and(a.clone(), b.clone()),
            Ltl::and(Ltl::not(a), Ltl::not(b)),
        )
    }

    /// Conjunction of all formulas; `true` when empty.
    pub fn and_all(fs: impl IntoIterator<Item = Ltl>) -> Ltl {
        fs.into_iter()
            .reduce(Ltl::and)
            .unwrap_or(Ltl::True)
    }

    /// Disjunction of all formulas; `false` when empty.
    pub fn or_all(fs: impl IntoIterator<Item = Ltl>) -> Ltl {
        fs.into_iter()
            .reduce(Ltl::or)
            .unwrap_or(Ltl::False)
    }

    /// Number of AST nodes.
    pub fn size(&self) -> usize {
        match self {
            Ltl::True | Ltl::False | Ltl::Atom(_) => 1,
            Ltl::Not(f) | Ltl::Next(f) => 1 + f.size(),
            Ltl::And(a, b) | Ltl::Or(a, b) | Ltl::Until(a, b) => 1 + a.size() + b.size(),
        }
    }

    /// Maximum nesting depth of temporal operators.
    pub fn temporal_depth(&self) -> usize {
        match self {
            Ltl::True | Ltl::False | Ltl::Atom(_) => 0,
            Ltl::Not(f) => f.temporal_depth(),
            Ltl::Next(f) => 1 + f.temporal_depth(),
            Ltl::And(a, b) | Ltl::Or(a, b) => a.temporal_depth().max(b.temporal_depth()),
            Ltl::Until(a, b) => 1 + a.temporal_depth().max(b.temporal_depth()),
        }
    }

    pub fn atoms(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut BTreeSet<String>) {
        match self {
            Ltl::True | Ltl::False => {}
            Ltl::Atom(p) => {
                out.insert(p.clone());
            }
            Ltl::Not(f) | Ltl::Next(f) => f.collect_atoms(out),
            Ltl::And(a, b) | Ltl::Or(a, b) | Ltl::Until(a, b) => {
                a.collect_atoms(out);
                b.collect_atoms(out);
            }
        }
    }
}

impl fmt::Display for Ltl {
    /// Prints in the concrete syntax accepted by [`crate::ltl::parse_ltl`];
    /// `true U f` and `!(true U !f)` are printed as `F f` and `G f`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ltl::True => write!(f, "true"),
            Ltl::False => write!(f, "false"),
            Ltl::Atom(p) => write!(f, "{p}"),
            Ltl::Not(inner) => match inner.as_ref() {
                Ltl::Until(a, b) if **a == Ltl::True => match b.as_ref() {
                    Ltl::Not(g) => write!(f, "G {}", Operand(g)),
                    _ => write!(f, "!{}", Operand(inner)),
                },
                _ => write!(f, "!{}", Operand(inner)),
            },
            Ltl::And(a, b) => write!(f, "({a} & {b})"),
            Ltl::Or(a, b) => write!(f, "({a} | {b})"),
            Ltl::Next(inner) => write!(f, "X {}", Operand(inner)),
            Ltl::Until(a, b) if **a == Ltl::True => write!(f, "F {}", Operand(b)),
            Ltl::Until(a, b) => write!(f, "({} U {})", Operand(a), Operand(b)),
        }
    }
}

/// Wraps non-atomic operands of unary operators in parentheses.
struct Operand<'a>(&'a Ltl);

impl fmt::Display for Operand<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            Ltl::True | Ltl::False | Ltl::Atom(_) => write!(f, "{}", self.0),
            Ltl::And(..) | Ltl::Or(..) => write!(f, "{}", self.0),
            Ltl::Until(a, _) if **a != Ltl::True => write!(f, "{}", self.0),
            _ => write!(f, "({})", self.0),
        }
    }
}
