//! Small worked instances shared by unit and integration tests.

use crate::core::instance::Instance;
use crate::core::schedule::{MachineOrders, OperationSequence};

/// The 2x2 worked instance: J1 = ((m0,3),(m1,2)), J2 = ((m1,2),(m0,4)).
/// Optimum 7, lower bound 7, three feasible orientations {7, 11, 11}.
pub fn i22() -> Instance {
    Instance::new(vec![vec![0, 1], vec![1, 0]], vec![vec![3, 2], vec![2, 4]])
        .expect("i22 is valid")
}

/// Sequence helper: job list -> operation sequence.
pub fn i22_seq(instance: &Instance, jobs: &[usize]) -> OperationSequence {
    OperationSequence::from_job_list(instance, jobs).expect("valid job list")
}

/// Machine orders helper.
pub fn i22_orders(instance: &Instance, orders: &[&[usize]]) -> MachineOrders {
    MachineOrders::new(instance, orders.iter().map(|o| o.to_vec()).collect())
        .expect("valid orders")
}
