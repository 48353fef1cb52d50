// Entry port functions for celltype tSensor, entry eSensor.
use crate::gen::*;

impl SSensor for ESensorForTSensor {
    fn set_device_ref(&self) {
        let (port, var, _lg) = self.cell.get_cell_ref();
        // Developers implement the component behavior here.
        let _ = (port, var);
    }

    fn get_distance(&self) -> i32 {
        let (port, var, _lg) = self.cell.get_cell_ref();
        // Developers implement the component behavior here.
        let _ = (port, var);
        0
    }
}
