//! Lists the admissible trees of arity 2 to 5 with their composites.

use pertalg::ainf::enumerate_admissible_trees;

fn main() {
    for i in 2..=5 {
        println!("arity {i}:");
        for t in enumerate_admissible_trees(i).unwrap() {
            println!("  {t:<10} {}", t.formula());
        }
    }
}
