// Entry port functions for celltype tCtrl, entry eBody.
use crate::gen::*;

impl SBody for EBodyForTCtrl {
    fn run(&self) {
        let (port, var, _lg) = self.cell.get_cell_ref();
        // Developers implement the component behavior here.
        let _ = (port, var);
    }
}
