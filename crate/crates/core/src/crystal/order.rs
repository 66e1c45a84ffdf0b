use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

/// A string `((i_1, a_1), ..., (i_l, a_l))`, outermost first.
pub type CrystalString = Vec<(usize, u32)>;

/// A total order on vertices, listed smallest first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VertexOrder {
    seq: Vec<usize>,
    rank: Vec<usize>,
}

impl VertexOrder {
    /// `None` unless `seq` is a permutation of `0..seq.len()`.
    pub fn new(seq: Vec<usize>) -> Option<Self> {
        let mut rank = alloc::vec![usize::MAX; seq.len()];
        for (k, &v) in seq.iter().enumerate() {
            if v >= seq.len() || rank[v] != usize::MAX {
                return None;
            }
            rank[v] = k;
        }
        Some(VertexOrder { seq, rank })
    }

    pub fn natural(n: usize) -> Self {
        Self::new((0..n).collect()).expect("identity permutation")
    }

    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    /// Vertices from smallest to largest.
    pub fn vertices(&self) -> &[usize] {
        &self.seq
    }

    pub fn rank(&self, v: usize) -> usize {
        self.rank[v]
    }

    pub fn cmp_vertices(&self, a: usize, b: usize) -> Ordering {
        self.rank[a].cmp(&self.rank[b])
    }
}

impl fmt::Display for VertexOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in self.seq.iter().enumerate() {
            if k > 0 {
                f.write_str("<")?;
            }
            write!(f, "{}", v + 1)?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StringOrdering {
    Less,
    Greater,
    Equal,
    Incomparable,
}

/// Compare at the first differing position, pairs ordered by vertex then
/// multiplicity. A proper prefix is incomparable.
pub fn string_order_compare(a: &[(usize, u32)], b: &[(usize, u32)], order: &VertexOrder) -> StringOrdering {
    for (x, y) in a.iter().zip(b) {
        let c = order.cmp_vertices(x.0, y.0).then(x.1.cmp(&y.1));
        match c {
            Ordering::Less => return StringOrdering::Less,
            Ordering::Greater => return StringOrdering::Greater,
            Ordering::Equal => {}
        }
    }
    if a.len() == b.len() {
        StringOrdering::Equal
    } else {
        StringOrdering::Incomparable
    }
}

/// `1^2 2^1` style rendering with 1-based vertices.
pub fn format_string(s: &[(usize, u32)]) -> alloc::string::String {
    use alloc::string::String;
    use core::fmt::Write;
    let mut out = String::new();
    out.push('(');
    for (k, (i, a)) in s.iter().enumerate() {
        if k > 0 {
            out.push(',');
        }
        let _ = write!(out, "({},{})", i + 1, a);
    }
    out.push(')');
    out
}
