//! Verification (placeholder during bring-up).
