//! Problem and schedule representations, disjunctive-graph operations, and
//! the brute-force enumeration oracle.

pub mod enumerate;
pub mod fixtures;
pub mod graph;
pub mod instance;
pub mod schedule;

pub use enumerate::{enumerate_all, enumerate_optimum, sequence_count, DEFAULT_ENUMERATION_CAP};
pub use graph::{
    critical_arcs, distance, makespan_longest_path, orders_distance, schedule_from_orders,
    DisjunctiveArc,
};
pub use instance::{disjunctive_edge_count, search_space_log2, Instance, OperationId};
pub use schedule::{build_schedule, check_feasible, MachineOrders, OperationSequence, Schedule};
