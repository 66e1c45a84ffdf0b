//! Crystal graphs as DOT text and weight tables as CSV.

use qcanon_core::crystal::{format_string, Crystal, Edge};
use qcanon_core::quiver::Quiver;
use qcanon_core::repmodule::{HighestWeightModule, TensorModule, WeightModule};

use crate::suites::{compute_bases, Engine, WeightBases};

/// Node ids in export order: by height, larger leading entries first, then
/// increasing string order within a weight.
fn export_order(c: &Crystal) -> Vec<usize> {
    let mut weights: Vec<_> = c.weights().cloned().collect();
    weights.sort_by_key(|nu| (nu.height(), std::cmp::Reverse(nu.clone())));
    weights.dedup();
    weights.iter().flat_map(|nu| c.sorted_by_string(nu)).collect()
}

pub fn crystal_dot(c: &Crystal, q: &Quiver) -> String {
    let order = export_order(c);
    let mut pos = vec![0; c.len()];
    for (k, &b) in order.iter().enumerate() {
        pos[b] = k;
    }
    let mut out = String::from("digraph crystal {\n");
    out += &format!("  // highest weight {}, vertex order {}\n", c.lambda(), c.order());
    for (k, &b) in order.iter().enumerate() {
        let node = c.node(b);
        out += &format!("  n{k} [label=\"{}\\n{}\"];\n", format_string(&node.string), node.nu);
    }
    for &b in &order {
        for i in 0..q.len() {
            if let Edge::To(t) = c.f(i, b) {
                out += &format!("  n{} -> n{} [label=\"{}\"];\n", pos[b], pos[t], q.name(i));
            }
        }
    }
    out + "}\n"
}

fn csv_text(rows: Vec<Vec<String>>) -> String {
    let mut w = csv::WriterBuilder::new().flexible(true).from_writer(Vec::new());
    for r in rows {
        w.write_record(&r).expect("writing to memory");
    }
    String::from_utf8(w.into_inner().expect("writing to memory")).expect("csv output is utf-8")
}

/// Rows `(nu, dim, nodes)`; an error if the counts differ anywhere.
pub fn dimension_table(m: &HighestWeightModule, c: &Crystal) -> Result<String, String> {
    let mut rows = vec![vec!["nu".to_string(), "dim".into(), "nodes".into()]];
    for nu in m.weights() {
        let (d, n) = (m.dim(&nu), c.nodes_at(&nu).len());
        if d != n {
            return Err(format!("weight {nu}: dimension {d} but {n} crystal nodes"));
        }
        rows.push(vec![nu.to_string(), d.to_string(), n.to_string()]);
    }
    Ok(csv_text(rows))
}

/// Rows `(nu, dim, pairs)` for a tensor product, pairs counted from the
/// factor crystals.
pub fn tensor_dimension_table(t: &TensorModule, left: &Crystal, right: &Crystal) -> Result<String, String> {
    let mut rows = vec![vec!["nu".to_string(), "dim".into(), "pairs".into()]];
    for mu in t.weights() {
        let pairs: usize = t.blocks(&mu).iter().map(|b| left.nodes_at(&b.nu2).len() * right.nodes_at(&b.nu1).len()).sum();
        let d = t.dim(&mu);
        if d != pairs {
            return Err(format!("tensor weight {mu}: dimension {d} but {pairs} pairs"));
        }
        rows.push(vec![mu.to_string(), d.to_string(), pairs.to_string()]);
    }
    Ok(csv_text(rows))
}

/// Canonical vectors (rows) in terms of monomials (columns), both labelled by
/// strings.
pub fn transition_csv(wb: &WeightBases, c: &Crystal) -> String {
    let labels: Vec<String> = wb.transition.labels.iter().map(|&b| format_string(c.string(b))).collect();
    let mut rows = vec![std::iter::once("G \\ m".to_string()).chain(labels.iter().cloned()).collect::<Vec<_>>()];
    for (r, label) in labels.iter().enumerate() {
        let mut row = vec![format!("G{label}")];
        row.extend((0..labels.len()).map(|k| wb.transition.entries[(r, k)].to_string()));
        rows.push(row);
    }
    csv_text(rows)
}

pub fn sign_table(list: &[WeightBases]) -> String {
    let mut rows = vec![["nu", "dim", "off_diagonal_nonzero", "positive", "negative"].map(String::from).to_vec()];
    for wb in list {
        let (n, p, q) = wb.signs_at_minus_one().unwrap_or_default();
        rows.push(vec![wb.nu.to_string(), wb.transition.dim().to_string(), n.to_string(), p.to_string(), q.to_string()]);
    }
    csv_text(rows)
}

/// File name for the matrix of one weight space, e.g. `transition_1_1.csv`.
pub fn transition_file_name(wb: &WeightBases) -> String {
    let parts: Vec<String> = wb.nu.iter().map(|x| x.to_string()).collect();
    format!("transition_{}.csv", parts.join("_"))
}

/// All tables of a configuration as `(file name, contents)`.
pub fn tables(e: &Engine) -> Result<Vec<(String, String)>, String> {
    let m = e.module()?;
    let c = e.crystal()?;
    let mut files = vec![("dimensions.csv".to_string(), dimension_table(m, c)?)];
    let list = compute_bases(m, c)?;
    for wb in &list {
        files.push((transition_file_name(wb), transition_csv(wb, c)));
    }
    files.push(("signs_at_minus_one.csv".to_string(), sign_table(&list)));
    if let Some(t) = e.tensor() {
        let t = t?;
        let (c2, c1) = e.tensor_crystals().expect("tensor configured")?;
        files.push(("tensor_dimensions.csv".to_string(), tensor_dimension_table(t, c2, c1)?));
    }
    Ok(files)
}

#[cfg(test)]
mod tests {
    use super::*;
    use qcanon_core::crystal::VertexOrder;

    fn engine(q: Quiver, l: Vec<i64>, h: i64) -> Engine {
        let n = q.len();
        Engine::new(q, l, None, h, VertexOrder::natural(n))
    }

    #[test]
    fn dot_examples() {
        let e = engine(Quiver::linear(1), vec![2], 4);
        let dot = crystal_dot(e.crystal().unwrap(), &e.quiver);
        assert_eq!(dot.matches(" [label=\"1\"]").count(), 2);
        assert!(dot.contains("n0 -> n1") && dot.contains("n1 -> n2"));
        let e = engine(Quiver::linear(1), vec![0], 4);
        let dot = crystal_dot(e.crystal().unwrap(), &e.quiver);
        assert!(dot.contains("n0 [") && !dot.contains("n1") && !dot.contains("->"));
        let e = engine(Quiver::linear(2), vec![1, 0], 4);
        let dot = crystal_dot(e.crystal().unwrap(), &e.quiver);
        assert!(dot.contains("n0 -> n1 [label=\"1\"]") && dot.contains("n1 -> n2 [label=\"2\"]"));
        assert_eq!(dot.matches("->").count(), 2);
    }

    #[test]
    fn table_examples() {
        let e = engine(Quiver::linear(1), vec![3], 5);
        let dims = dimension_table(e.module().unwrap(), e.crystal().unwrap()).unwrap();
        let rows: Vec<&str> = dims.lines().skip(1).collect();
        assert_eq!(&rows[..4], ["(0),1,1", "(1),1,1", "(2),1,1", "(3),1,1"]);
        assert_eq!(rows[4], "(4),0,0");
        let e = engine(Quiver::linear(2), vec![1, 1], 4);
        let files = tables(&e).unwrap();
        let dims = &files[0].1;
        assert!(dims.lines().any(|l| l == "\"(1,1)\",2,2"), "{dims}");
        assert!(files.iter().any(|(n, _)| n == "transition_1_1.csv"));
        // empty weight spaces get a row but no matrix
        assert!(dims.lines().any(|l| l == "\"(3,0)\",0,0"));
        assert!(!files.iter().any(|(n, _)| n == "transition_3_0.csv"));
    }
}
