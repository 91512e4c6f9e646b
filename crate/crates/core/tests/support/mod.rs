pub mod swilk_reference;
