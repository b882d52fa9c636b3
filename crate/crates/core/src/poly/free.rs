use crate::field::Field;
use crate::poly::polynomial::Polynomial;

/// An element of a free module `S^rank`, one polynomial per basis position.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FreeElement<K: Field> {
    components: Vec<Polynomial<K>>,
}

impl<K: Field> FreeElement<K> {
    pub fn zero(field: K, nvars: usize, rank: usize) -> Self {
        FreeElement { components: vec![Polynomial::zero(field, nvars); rank] }
    }

    pub fn basis(field: K, nvars: usize, rank: usize, index: usize) -> Self {
        let mut v = Self::zero(field, nvars, rank);
        v.components[index] = Polynomial::one(field, nvars);
        v
    }

    pub fn from_components(components: Vec<Polynomial<K>>) -> Self {
        FreeElement { components }
    }

    pub fn rank(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[Polynomial<K>] {
        &self.components
    }

    pub fn into_components(self) -> Vec<Polynomial<K>> {
        self.components
    }

    pub fn component(&self, i: usize) -> &Polynomial<K> {
        &self.components[i]
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Polynomial::is_zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        FreeElement { components: self.components.iter().zip(&other.components).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        FreeElement { components: self.components.iter().zip(&other.components).map(|(a, b)| a - b).collect() }
    }

    pub fn scale(&self, r: &Polynomial<K>) -> Self {
        FreeElement { components: self.components.iter().map(|a| a * r).collect() }
    }

    /// Coordinates of `self ⊗ other` in the basis `e_i ⊗ f_j`, index `i*n + j`.
    pub fn tensor(&self, other: &Self) -> Self {
        let mut components = Vec::with_capacity(self.rank() * other.rank());
        for a in &self.components {
            for b in &other.components {
                components.push(a * b);
            }
        }
        FreeElement { components }
    }

    /// Degree of a homogeneous element given the basis degrees, `None` for
    /// zero or inhomogeneous elements.
    pub fn homogeneous_degree(&self, weights: &[u32], basis_degrees: &[i64]) -> Option<i64> {
        let mut deg = None;
        for (p, &shift) in self.components.iter().zip(basis_degrees) {
            for (m, _) in p.terms() {
                let d = m.weighted_degree(weights) as i64 + shift;
                match deg {
                    None => deg = Some(d),
                    Some(e) if e != d => return None,
                    _ => {}
                }
            }
        }
        deg
    }

    pub fn to_text(&self, names: &[String]) -> String {
        let parts: Vec<String> = self.components.iter().map(|p| p.to_text(names)).collect();
        format!("[{}]", parts.join(", "))
    }
}
