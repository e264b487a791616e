use smallvec::SmallVec;

/// Index of a generator inside its presentation. Generators are declared in
/// PBW order, so the id doubles as the PBW rank.
pub type GenId = u8;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Generator {
    pub id: GenId,
    pub name: String,
    /// Eigenvalue under `ad K3` in the undeformed algebra.
    pub goodness: i8,
    pub pbw_rank: usize,
}

/// A finite product of generators, read left to right.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(pub SmallVec<[GenId; 14]>);

impl Word {
    pub fn empty() -> Self {
        Self(SmallVec::new())
    }

    pub fn letter(g: GenId) -> Self {
        let mut v = SmallVec::new();
        v.push(g);
        Self(v)
    }

    pub fn from_letters(letters: &[GenId]) -> Self {
        Self(SmallVec::from_slice(letters))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[GenId] {
        &self.0
    }

    pub fn last(&self) -> Option<GenId> {
        self.0.last().copied()
    }

    /// Non-decreasing in PBW rank.
    pub fn is_normal(&self) -> bool {
        self.0.windows(2).all(|w| w[0] <= w[1])
    }

    pub fn pushed(&self, g: GenId) -> Self {
        let mut w = self.clone();
        w.0.push(g);
        w
    }

    pub fn concat(&self, other: &Self) -> Self {
        let mut w = self.clone();
        w.0.extend_from_slice(&other.0);
        w
    }

    pub fn reversed(&self) -> Self {
        Self(self.0.iter().rev().copied().collect())
    }

    pub fn contains(&self, g: GenId) -> bool {
        self.0.contains(&g)
    }

    /// Renders `P+^2*K3` style text; the empty word prints as `1`.
    pub fn render(&self, names: &[String]) -> String {
        if self.0.is_empty() {
            return "1".to_string();
        }
        let mut parts: Vec<String> = Vec::new();
        let mut i = 0;
        while i < self.0.len() {
            let g = self.0[i];
            let mut j = i;
            while j < self.0.len() && self.0[j] == g {
                j += 1;
            }
            let name = names.get(g as usize).map(String::as_str).unwrap_or("?");
            if j - i == 1 {
                parts.push(name.to_string());
            } else {
                parts.push(format!("{name}^{}", j - i));
            }
            i = j;
        }
        parts.join("*")
    }
}
