//! Record a batch of occasions from one state and read back the two
//! probability views of the same slice.
//!
//! ```text
//! cargo run --example hypergraph_slice
//! ```

use gap::model::{ActionId, Model, StateId};

fn main() -> gap::Result<()> {
    let mut m = Model::new(3);
    let si = m.observe("s_i");
    let f1 = m.observe("s_f1");
    let f2 = m.observe("s_f2");
    // counts per (result, action)
    let table: [(StateId, [u32; 3]); 3] = [(si, [3, 1, 7]), (f1, [2, 5, 1]), (f2, [9, 1, 2])];
    for (r, counts) in table {
        for (a, &c) in counts.iter().enumerate() {
            for _ in 0..c {
                m.record(si, ActionId(a as u32), r)?;
            }
        }
    }

    println!("{:>6} {:>10} {:>10} {:>10}", "", "a0", "a1", "a2");
    for (r, _) in table {
        let name = m.registry.name(r).unwrap();
        let row: Vec<String> = (0..3)
            .map(|a| format!("{:.3}/{:.3}", m.graph.apriori_prob(si, ActionId(a), r).unwrap(), m.graph.aposteriori_prob(si, ActionId(a), r).unwrap()))
            .collect();
        println!("{name:>6} {}", row.join(" "));
    }
    println!("(a priori / a posteriori)");

    for a in 0..3 {
        let (r, p) = m.graph.max_result_for_action(si, ActionId(a))?;
        println!("a{a}: most likely result {} with {p:.3}", m.registry.name(r).unwrap());
    }
    for r in [si, f1, f2] {
        let (a, p) = m.graph.max_action_for_transition(si, r)?;
        println!("s_i -> {}: most likely cause {a:?} with {p:.3}", m.registry.name(r).unwrap());
    }
    Ok(())
}
