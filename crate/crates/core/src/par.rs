//! Order-preserving batch execution, data-parallel when the `parallel`
//! feature is enabled.

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Exec {
    Sequential,
    #[default]
    Parallel,
}

impl Exec {
    /// Applies `f` to every item; results keep the input order.
    pub fn map<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        match self {
            Exec::Sequential => items.iter().map(f).collect(),
            Exec::Parallel => par_map(items, f),
        }
    }

    /// First item (in input order) for which `f` returns `Some`.
    pub fn find_map_first<T, R, F>(self, items: &[T], f: F) -> Option<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> Option<R> + Sync + Send,
    {
        match self {
            Exec::Sequential => items.iter().find_map(f),
            Exec::Parallel => par_find_map_first(items, f),
        }
    }
}

#[cfg(feature = "parallel")]
fn par_map<T: Sync, R: Send, F: Fn(&T) -> R + Sync + Send>(items: &[T], f: F) -> Vec<R> {
    use rayon::prelude::*;
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
fn par_map<T: Sync, R: Send, F: Fn(&T) -> R + Sync + Send>(items: &[T], f: F) -> Vec<R> {
    items.iter().map(f).collect()
}

#[cfg(feature = "parallel")]
fn par_find_map_first<T: Sync, R: Send, F: Fn(&T) -> Option<R> + Sync + Send>(items: &[T], f: F) -> Option<R> {
    use rayon::prelude::*;
    items.par_iter().find_map_first(f)
}

#[cfg(not(feature = "parallel"))]
fn par_find_map_first<T: Sync, R: Send, F: Fn(&T) -> Option<R> + Sync + Send>(items: &[T], f: F) -> Option<R> {
    items.iter().find_map(f)
}
