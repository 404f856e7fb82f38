//! State ids: ranking orders, encoding states and projecting onto a fixed order.

use orbitscope::space::{perm_rank, perm_unrank, QuestionOrder, State, StateSpace};
use orbitscope::stats::project_fixed_order;

fn main() -> anyhow::Result<()> {
    let space = StateSpace::new(3)?;
    println!(
        "n = 3: {} answer strings x {} orders = {} states",
        space.answer_count(),
        space.order_count(),
        space.size()
    );

    println!("order ranks:");
    for rank in 0..space.order_count() {
        let order = perm_unrank(3, rank)?;
        println!("  {order} -> {}", perm_rank(&order));
    }

    for (x, y) in [("110", "120"), ("111", "120"), ("100", "102")] {
        let s = State::new(x.parse()?, y.parse()?)?;
        println!(
            "{s} has id {} and decodes to raw answers {}",
            s.id(),
            s.decode()
        );
    }

    let fixed: QuestionOrder = "120".parse()?;
    for id in [29, 31, 30, 32] {
        let s = State::from_id(space, id)?;
        let p = project_fixed_order(&s, &fixed)?;
        println!("{s} = {id} projects onto {p} = {}", p.id());
    }

    let big = StateSpace::new(13)?;
    println!("n = 13 has {} states; ids fit in 64 bits", big.size());
    Ok(())
}
