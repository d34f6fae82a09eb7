//! Concrete finite groups given by full Cayley tables.
//!
//! Every group keeps its identity at index 0. Constructors for the families
//! used throughout the crate live in [`families`]; the textual descriptors
//! accepted on the command line are in [`spec`].

mod cayley;
pub mod families;
mod iso;
pub mod spec;
mod table;
mod word;

use std::fmt;

pub use cayley::{from_cayley_text, to_cayley_text};
pub use families::{
    make_affine, make_cyclic, make_dihedral, make_metacyclic, make_metacyclic_power, make_product,
    make_symmetric,
};
pub use iso::{find_isomorphism, is_isomorphism};
pub use spec::GroupSpec;
pub use table::{Elem, Table, EXHAUSTIVE_LIMIT};
pub use word::Word;

use crate::error::{Error, Result};

/// A finite group with display names and named generators.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FiniteGroup {
    table: Table,
    names: Vec<String>,
    generators: Vec<(String, Elem)>,
}

impl FiniteGroup {
    /// Wraps a validated table. Fails if the generators do not generate, if
    /// the name list has the wrong length, or if generator names repeat.
    pub fn new(table: Table, names: Vec<String>, generators: Vec<(String, Elem)>) -> Result<Self> {
        if names.len() != table.order() {
            return Err(Error::InvalidParameter(format!(
                "{} names for a group of order {}",
                names.len(),
                table.order()
            )));
        }
        for (i, (name, g)) in generators.iter().enumerate() {
            if *g >= table.order() {
                return Err(Error::InvalidParameter(format!("generator {name} out of range")));
            }
            if generators[..i].iter().any(|(other, _)| other == name) {
                return Err(Error::InvalidParameter(format!("duplicate generator name {name}")));
            }
        }
        let gens: Vec<Elem> = generators.iter().map(|&(_, g)| g).collect();
        if table.generated_subgroup(&gens).len() != table.order() {
            return Err(Error::InvalidParameter("generators do not generate the group".into()));
        }
        Ok(FiniteGroup { table, names, generators })
    }

    /// Wraps a bare table, naming elements by index and using a greedy
    /// generating set.
    pub fn from_table(table: Table) -> Self {
        let names: Vec<String> = (0..table.order()).map(|i| i.to_string()).collect();
        Self::from_table_with_names(table, names).expect("names sized to the table")
    }

    /// Like [`FiniteGroup::from_table`] but with caller-supplied element
    /// names, which then double as generator names.
    pub fn from_table_with_names(table: Table, names: Vec<String>) -> Result<Self> {
        let generators = table
            .generating_set()
            .into_iter()
            .map(|g| (names.get(g).cloned().unwrap_or_else(|| g.to_string()), g))
            .collect();
        FiniteGroup::new(table, names, generators)
    }

    pub fn table(&self) -> &Table {
        &self.table
    }

    pub fn order(&self) -> usize {
        self.table.order()
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.table.mul(a, b)
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.table.inv(a)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, a: Elem) -> &str {
        &self.names[a]
    }

    pub fn generators(&self) -> &[(String, Elem)] {
        &self.generators
    }

    pub fn generator(&self, name: &str) -> Option<Elem> {
        self.generators.iter().find(|(n, _)| n == name).map(|&(_, g)| g)
    }

    pub fn is_abelian(&self) -> bool {
        self.table.is_abelian()
    }

    /// Elements commuting with every element.
    pub fn center(&self) -> Vec<Elem> {
        self.table.center()
    }

    /// Evaluates a word over the generators.
    pub fn eval(&self, word: &Word) -> Result<Elem> {
        word.evaluate(self)
    }

    /// Parses an element name as printed by [`FiniteGroup::name`], or
    /// evaluates a word such as `r^2*s`.
    pub fn parse_elem(&self, text: &str) -> Result<Elem> {
        let text = text.trim();
        match self.names.iter().position(|n| n == text) {
            Some(e) => Ok(e),
            None => self.eval(&text.parse()?),
        }
    }

    /// The subgroup on `elems` (identity first) as a group in its own right,
    /// keeping element names.
    pub fn subgroup(&self, elems: &[Elem]) -> Result<FiniteGroup> {
        let table = self.table.restrict(elems)?;
        let names = elems.iter().map(|&e| self.names[e].clone()).collect();
        FiniteGroup::from_table_with_names(table, names)
    }
}

/// Evaluates `w` in `group`; the empty word is the identity.
pub fn evaluate_word(group: &FiniteGroup, w: &Word) -> Result<Elem> {
    group.eval(w)
}

/// Elements of the center of `group`.
pub fn center(group: &FiniteGroup) -> Vec<Elem> {
    group.center()
}

/// Searches for an isomorphism `a -> b`; the returned vector maps each
/// element index of `a` to its image in `b`.
pub fn group_isomorphic(a: &FiniteGroup, b: &FiniteGroup) -> Option<Vec<Elem>> {
    find_isomorphism(&[a.table()], &[b.table()])
}

impl fmt::Display for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<&str> = self.generators.iter().map(|(n, _)| n.as_str()).collect();
        write!(f, "group of order {} on <{}>", self.order(), gens.join(", "))
    }
}
