//! C ABI for treelab.
//!
//! Trees and hypergraphs cross the boundary as opaque handles created from
//! JSON and released with their `_free` function. Every fallible call returns
//! a [`TreelabStatus`]; on failure [`treelab_last_error`] describes the cause.
//! Strings handed out by the library are released with
//! [`treelab_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use treelab::hypercolor::{hpc_brute, wf_to_hpc, Hypergraph};
use treelab::seqcode::{decode, encode, FinSeq, SeqCode};
use treelab::transforms::{star_invert, t_minus, t_plus, t_star};
use treelab::trees::{check_tree, ExplicitTree, TreeQuery, TreeWithLeaves};
use treelab::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TreelabStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    MalformedJson = 3,
    Rejected = 4,
    NotClosed = 5,
    Resource = 6,
    Overflow = 7,
    BufferTooSmall = 8,
    Panic = 9,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TreelabTransform {
    Minus = 0,
    Plus = 1,
    Star = 2,
    StarInvert = 3,
}

/// A finite prefix-closed set of sequences.
pub struct TreelabTree(ExplicitTree);

/// A finite hypergraph.
pub struct TreelabHypergraph(Hypergraph);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> TreelabStatus {
    match e {
        Error::Rejected(_) => TreelabStatus::Rejected,
        Error::NotClosed(_) => TreelabStatus::NotClosed,
        Error::Resource(_) => TreelabStatus::Resource,
        Error::Overflow => TreelabStatus::Overflow,
        Error::Element { source, .. } => status_of(source),
        Error::Json(_) => TreelabStatus::MalformedJson,
        Error::Io(_) => TreelabStatus::Rejected,
    }
}

struct Fail(TreelabStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

impl From<serde_json::Error> for Fail {
    fn from(e: serde_json::Error) -> Self {
        Fail(TreelabStatus::MalformedJson, e.to_string())
    }
}

/// Runs `body`, recording any failure or panic as the last error.
fn guard(body: impl FnOnce() -> Result<(), Fail>) -> TreelabStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            set_error("");
            TreelabStatus::Ok
        }
        Ok(Err(Fail(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("panic inside treelab");
            TreelabStatus::Panic
        }
    }
}

fn null(what: &str) -> Fail {
    Fail(TreelabStatus::NullPointer, format!("{what} is null"))
}

unsafe fn read_str<'a>(s: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|e| Fail(TreelabStatus::InvalidUtf8, format!("{what}: {e}")))
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn put<T>(out: *mut T, value: T, what: &str) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

fn c_string(s: String) -> Result<*mut c_char, Fail> {
    CString::new(s)
        .map(CString::into_raw)
        .map_err(|_| Fail(TreelabStatus::Rejected, "string contains a NUL byte".into()))
}

/// Message for the most recent failure on this thread, or an empty string.
/// Valid until the next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn treelab_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `s` must be null or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn treelab_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a JSON array of sequences. With `close`, missing prefixes are
/// added instead of rejecting the input.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn treelab_tree_from_json(
    json: *const c_char,
    close: bool,
    out: *mut *mut TreelabTree,
) -> TreelabStatus {
    guard(|| {
        let nodes: Vec<FinSeq> = serde_json::from_str(read_str(json, "json")?)?;
        let tree = if close { ExplicitTree::closure_of(nodes) } else { check_tree(nodes.into_iter().collect())? };
        put(out, Box::into_raw(Box::new(TreelabTree(tree))), "out")
    })
}

/// # Safety
/// `tree` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn treelab_tree_free(tree: *mut TreelabTree) {
    if !tree.is_null() {
        drop(Box::from_raw(tree));
    }
}

/// Number of nodes, or 0 for a null handle.
///
/// # Safety
/// `tree` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn treelab_tree_len(tree: *const TreelabTree) -> usize {
    tree.as_ref().map_or(0, |t| t.0.len())
}

/// # Safety
/// `tree` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn treelab_tree_to_json(tree: *const TreelabTree, out: *mut *mut c_char) -> TreelabStatus {
    guard(|| {
        let t = deref(tree, "tree")?;
        put(out, c_string(serde_json::to_string(&t.0)?)?, "out")
    })
}

/// Applies a transform and returns a new handle. For `Star` the result is
/// the star tree itself; its leaves are the nodes ending in 0.
///
/// # Safety
/// `tree` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn treelab_tree_transform(
    tree: *const TreelabTree,
    op: TreelabTransform,
    out: *mut *mut TreelabTree,
) -> TreelabStatus {
    guard(|| {
        let t = &deref(tree, "tree")?.0;
        let result = match op {
            TreelabTransform::Minus => t_minus(t),
            TreelabTransform::Plus => t_plus(t),
            TreelabTransform::Star => t_star(t).star,
            TreelabTransform::StarInvert => star_invert(t)?,
        };
        put(out, Box::into_raw(Box::new(TreelabTree(result))), "out")
    })
}

/// Leaf set as a JSON array.
///
/// # Safety
/// `tree` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn treelab_tree_leaves_json(tree: *const TreelabTree, out: *mut *mut c_char) -> TreelabStatus {
    guard(|| {
        let t = deref(tree, "tree")?;
        put(out, c_string(serde_json::to_string(&t.0.leaves())?)?, "out")
    })
}

/// Whether the tree has no node of length `d`.
///
/// # Safety
/// `tree` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn treelab_tree_wf_probe(tree: *const TreelabTree, d: usize, out: *mut bool) -> TreelabStatus {
    guard(|| {
        let t = deref(tree, "tree")?;
        put(out, t.0.wf_probe(d)?, "out")
    })
}

/// Whether the sequence `entries[0..len]` has `d`-splitting in the tree.
///
/// # Safety
/// `tree` must be a live handle; `entries` must point to `len` readable
/// values (or be null when `len` is 0); `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn treelab_tree_has_d_splitting(
    tree: *const TreelabTree,
    entries: *const u64,
    len: usize,
    d: usize,
    out: *mut bool,
) -> TreelabStatus {
    guard(|| {
        let t = deref(tree, "tree")?;
        let seq = read_seq(entries, len)?;
        put(out, t.0.has_d_splitting(&seq, d)?, "out")
    })
}

/// Nodes with `d`-splitting as a JSON array.
///
/// # Safety
/// `tree` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn treelab_tree_kernel_probe_json(
    tree: *const TreelabTree,
    d: usize,
    out: *mut *mut c_char,
) -> TreelabStatus {
    guard(|| {
        let t = deref(tree, "tree")?;
        put(out, c_string(serde_json::to_string(&t.0.kernel_probe(d)?)?)?, "out")
    })
}

/// Parses `{"vertices": n, "edges": [[...], ...]}`.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn treelab_hypergraph_from_json(
    json: *const c_char,
    out: *mut *mut TreelabHypergraph,
) -> TreelabStatus {
    guard(|| {
        let h: Hypergraph = serde_json::from_str(read_str(json, "json")?)?;
        put(out, Box::into_raw(Box::new(TreelabHypergraph(h))), "out")
    })
}

/// # Safety
/// `h` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn treelab_hypergraph_free(h: *mut TreelabHypergraph) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// # Safety
/// `h` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn treelab_hypergraph_to_json(
    h: *const TreelabHypergraph,
    out: *mut *mut c_char,
) -> TreelabStatus {
    guard(|| {
        let h = deref(h, "hypergraph")?;
        put(out, c_string(serde_json::to_string(&h.0)?)?, "out")
    })
}

/// Decides proper `k`-colorability by backtracking, visiting at most
/// `ceiling` search nodes. When `witness_json` is not null it receives the
/// witness coloring as a JSON array, or null when there is none.
///
/// # Safety
/// `h` must be a live handle; `colorable` must be writable; `witness_json`
/// must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn treelab_hpc(
    h: *const TreelabHypergraph,
    k: u32,
    ceiling: u64,
    colorable: *mut bool,
    witness_json: *mut *mut c_char,
) -> TreelabStatus {
    guard(|| {
        let h = deref(h, "hypergraph")?;
        let outcome = hpc_brute(&h.0, k, ceiling)?;
        if !witness_json.is_null() {
            let w = match &outcome.witness {
                Some(f) => c_string(serde_json::to_string(&f.colors)?)?,
                None => ptr::null_mut(),
            };
            witness_json.write(w);
        }
        put(colorable, outcome.colorable, "colorable")
    })
}

/// The coloring gadget of a finite tree with its exact leaf set.
///
/// # Safety
/// `tree` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn treelab_wf_to_hpc(
    tree: *const TreelabTree,
    k: u32,
    out: *mut *mut TreelabHypergraph,
) -> TreelabStatus {
    guard(|| {
        let t = deref(tree, "tree")?;
        let h = wf_to_hpc(&TreeWithLeaves::exact(t.0.clone()), k)?;
        put(out, Box::into_raw(Box::new(TreelabHypergraph(h))), "out")
    })
}

unsafe fn read_seq(entries: *const u64, len: usize) -> Result<FinSeq, Fail> {
    if len == 0 {
        return Ok(FinSeq::empty());
    }
    if entries.is_null() {
        return Err(null("entries"));
    }
    Ok(FinSeq::new(std::slice::from_raw_parts(entries, len).to_vec()))
}

/// Sequence code of `entries[0..len]`.
///
/// # Safety
/// `entries` must point to `len` readable values (or be null when `len` is
/// 0); `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn treelab_seq_encode(entries: *const u64, len: usize, out: *mut u64) -> TreelabStatus {
    guard(|| {
        let seq = read_seq(entries, len)?;
        put(out, encode(&seq)?.0, "out")
    })
}

/// Writes the sequence with code `code` into `buf` and its length into
/// `out_len`. When `cap` is too small nothing is written to `buf`,
/// `out_len` still receives the length, and the status is
/// `BufferTooSmall`.
///
/// # Safety
/// `buf` must have room for `cap` values (or be null when `cap` is 0);
/// `out_len` must be writable.
#[no_mangle]
pub unsafe extern "C" fn treelab_seq_decode(code: u64, buf: *mut u64, cap: usize, out_len: *mut usize) -> TreelabStatus {
    guard(|| {
        let seq = decode(SeqCode(code));
        put(out_len, seq.len(), "out_len")?;
        if seq.len() > cap {
            return Err(Fail(
                TreelabStatus::BufferTooSmall,
                format!("sequence has {} entries but the buffer holds {cap}", seq.len()),
            ));
        }
        if !seq.is_empty() {
            if buf.is_null() {
                return Err(null("buf"));
            }
            ptr::copy_nonoverlapping(seq.entries().as_ptr(), buf, seq.len());
        }
        Ok(())
    })
}
