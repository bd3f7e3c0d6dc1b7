//! Coupled systems (placeholder during bring-up).
