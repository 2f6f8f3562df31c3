use crate::geometry::World;
use crate::tree::{NodeId, Tree};

/// Recomputes the visibility of one node: the ray-cast distance from the
/// node along its incoming edge direction to the first obstacle or the
/// workspace boundary. The root keeps the `v_max` sentinel.
pub fn compute_dir_vis(tree: &mut Tree, id: NodeId, world: &World) {
    let vis = match tree.node(id).dir() {
        None => tree.v_max(),
        Some(dir) => {
            world
                .ray_cast_unchecked(tree.node(id).config(), dir)
                .distance
        }
    };
    tree.set_vis(id, vis);
}

/// Refreshes `x_new` and every node whose parent changed this iteration.
/// Returns the number of recomputations.
pub fn update_visibility(
    tree: &mut Tree,
    x_new: NodeId,
    rewired: &[NodeId],
    world: &World,
) -> usize {
    compute_dir_vis(tree, x_new, world);
    for &id in rewired {
        compute_dir_vis(tree, id, world);
    }
    1 + rewired.len()
}
