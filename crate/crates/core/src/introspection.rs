//! Introspection over managed objects: bounds, location, type
//! compatibility, and variadic arguments.
//!
//! Primitives (`_size_left`, `_size_right`, `location`, `try_cast`,
//! `count_varargs`, `_get_vararg`) read runtime metadata directly. The
//! composites (`size_left`, `size_right`, `freeable`, `get_vararg`) are
//! built only from primitives. The guest prelude carries its own copies of
//! the composites written in MiniC; both are checked against each other in
//! the test suite.

use crate::diag::DiagnosticKind;
use crate::runtime::{
    Frame, GuestPointer, LocationKind, ManagedObject, Payload, Runtime, Value, Violation,
};
use crate::types::{GuestType, Signature, TypeExpr, TypeKind};

/// A pointer is legal when it references an object that is not INVALID.
pub fn is_legal(p: &GuestPointer) -> bool {
    location(p) != LocationKind::Invalid
}

/// Bytes from the pointer target to the end of the object. Only
/// meaningful for legal pointers; NULL yields -1 and a released object
/// still answers from its recorded size.
pub fn size_right_raw(p: &GuestPointer) -> i64 {
    match &p.pointee {
        None => -1,
        Some(o) => o.byte_size() as i64 - p.offset,
    }
}

/// Bytes from the beginning of the object to the pointer target.
pub fn size_left_raw(p: &GuestPointer) -> i64 {
    match &p.pointee {
        None => -1,
        Some(_) => p.offset,
    }
}

/// Location of the referenced object; NULL is INVALID.
pub fn location(p: &GuestPointer) -> LocationKind {
    p.pointee
        .as_ref()
        .map_or(LocationKind::Invalid, |o| o.location())
}

fn in_bounds(p: &GuestPointer) -> bool {
    is_legal(p) && size_left_raw(p) >= 0 && size_right_raw(p) >= 0
}

/// Remaining bytes to the right, or -1 for illegal or out-of-bounds
/// pointers. A one-past-the-end pointer answers 0.
pub fn size_right(p: &GuestPointer) -> i64 {
    if in_bounds(p) {
        size_right_raw(p)
    } else {
        -1
    }
}

/// Remaining bytes to the left, or -1 for illegal or out-of-bounds
/// pointers.
pub fn size_left(p: &GuestPointer) -> i64 {
    if in_bounds(p) {
        size_left_raw(p)
    } else {
        -1
    }
}

/// Whether `free` through this pointer is legal.
pub fn freeable(p: &GuestPointer) -> bool {
    location(p) == LocationKind::Dynamic && size_left_raw(p) == 0
}

/// Returns `p` when the referenced object can be treated as `t`, else NULL.
///
/// `t` describes the pointer itself: `pointer(S)` asks whether `p` can be
/// dereferenced as an `S`, `function(...)` asks whether `p` can be called
/// with that signature. For the latter, `p` may also address a slot that
/// holds such a function pointer (the `try_cast(&f, type(f))` idiom).
pub fn try_cast(p: &GuestPointer, t: &TypeExpr) -> GuestPointer {
    if cast_compatible(p, t) {
        p.clone()
    } else {
        GuestPointer::null()
    }
}

pub fn cast_compatible(p: &GuestPointer, t: &TypeExpr) -> bool {
    let Some(obj) = &p.pointee else { return false };
    let o = obj.borrow();
    if o.location == LocationKind::Invalid || p.offset < 0 || p.offset > o.byte_size as i64 {
        return false;
    }
    match t.kind {
        TypeKind::Function => {
            if let Some(sig) = function_signature(&o, p.offset) {
                return signature_matches(sig, t);
            }
            // One level of indirection through a function-pointer slot.
            match slot_type(&o, p.offset as u64) {
                Slot::Typed(GuestType::Pointer(_)) => {}
                _ => return false,
            }
            match o.payload_value_at(p.offset as u64) {
                Some(Value::Ptr(fp)) => {
                    drop(o);
                    pointer_to_function_matches(&fp, t)
                }
                _ => false,
            }
        }
        TypeKind::Pointer => target_compatible(&o, p.offset as u64, &t.children[0]),
        _ => false,
    }
}

fn function_signature(o: &ManagedObject, offset: i64) -> Option<&Signature> {
    if offset != 0 || o.function().is_none() {
        return None;
    }
    match &o.element_type {
        GuestType::Function(sig) => Some(sig),
        _ => None,
    }
}

fn pointer_to_function_matches(fp: &GuestPointer, t: &TypeExpr) -> bool {
    let Some(obj) = &fp.pointee else { return false };
    let o = obj.borrow();
    o.location != LocationKind::Invalid
        && function_signature(&o, fp.offset).is_some_and(|s| signature_matches(s, t))
}

/// Kind-level signature comparison against a function TypeExpr.
pub fn signature_matches(sig: &Signature, t: &TypeExpr) -> bool {
    t.kind == TypeKind::Function
        && t.variadic == sig.variadic
        && t.children.len() == sig.params.len() + 1
        && t.children[0].kind == sig.ret.kind()
        && sig
            .params
            .iter()
            .zip(&t.children[1..])
            .all(|(p, c)| p.kind() == c.kind)
}

enum Slot<'a> {
    Typed(&'a GuestType),
    /// Untouched heap bytes: no type yet.
    Fresh,
    Conflict,
}

fn slot_type(o: &ManagedObject, off: u64) -> Slot<'_> {
    match &o.payload {
        Payload::Typed { layout, .. } => {
            if layout.size == 0 {
                return Slot::Conflict;
            }
            match layout.leaf_at(off % layout.size) {
                Some(i) => Slot::Typed(&layout.leaves[i].ty),
                None => Slot::Conflict,
            }
        }
        Payload::Untyped(cells) => {
            if let Some((t, _)) = cells.get(&off) {
                return Slot::Typed(t);
            }
            match cells.range(..off).next_back() {
                Some((start, (t, _))) if start + t.size().unwrap_or(1) > off => Slot::Conflict,
                _ => Slot::Fresh,
            }
        }
        _ => Slot::Conflict,
    }
}

impl ManagedObject {
    fn payload_value_at(&self, off: u64) -> Option<Value> {
        match &self.payload {
            Payload::Typed { layout, cells } => {
                let es = layout.size;
                if es == 0 {
                    return None;
                }
                let li = layout.leaf_at(off % es)?;
                cells
                    .get((off / es) as usize * layout.leaves.len() + li)
                    .cloned()
            }
            Payload::Untyped(cells) => cells.get(&off).map(|(_, v)| v.clone()),
            _ => None,
        }
    }
}

/// Can the bytes at `off` be used as a value described by `target`?
fn target_compatible(o: &ManagedObject, off: u64, target: &TypeExpr) -> bool {
    let right = o.byte_size as i64 - off as i64;
    match target.kind {
        TypeKind::Void => right >= 0,
        TypeKind::Function => {
            function_signature(o, off as i64).is_some_and(|s| signature_matches(s, target))
        }
        TypeKind::Char | TypeKind::Int | TypeKind::Long | TypeKind::Double | TypeKind::Pointer => {
            scalar_slot_compatible(o, off, target)
        }
        TypeKind::Array => {
            let Some(elem) = target.children.first() else {
                return false;
            };
            let Some(es) = elem.size() else { return false };
            if right < (es * target.array_length) as i64 {
                return false;
            }
            (0..target.array_length).all(|i| target_compatible(o, off + i * es, elem))
        }
        TypeKind::Struct => struct_compatible(o, off, target),
    }
}

fn scalar_slot_compatible(o: &ManagedObject, off: u64, s: &TypeExpr) -> bool {
    let Some(size) = s.size() else { return false };
    if (o.byte_size as i64 - off as i64) < size as i64 || !off.is_multiple_of(size) {
        return false;
    }
    match slot_type(o, off) {
        Slot::Typed(t) => leaf_matches(t, s),
        Slot::Fresh => untyped_range_is_fresh(o, off, size),
        Slot::Conflict => false,
    }
}

fn untyped_range_is_fresh(o: &ManagedObject, off: u64, size: u64) -> bool {
    match &o.payload {
        Payload::Untyped(cells) => cells.range(off..off + size).next().is_none(),
        _ => false,
    }
}

fn struct_compatible(o: &ManagedObject, off: u64, target: &TypeExpr) -> bool {
    let Some(sref) = &target.struct_ref else {
        return false;
    };
    match &o.payload {
        Payload::Typed { layout, .. } => {
            if layout.size == 0 {
                return false;
            }
            let within = off % layout.size;
            match struct_size_at(&o.element_type, within, sref.id) {
                Some(size) => o.byte_size as i64 - off as i64 >= size as i64,
                None => false,
            }
        }
        Payload::Untyped(_) => {
            // Heap memory may be viewed as the struct when every slot is
            // either untouched or already holds the matching field type.
            let Some((size, _, leaves)) = expr_layout(target) else {
                return false;
            };
            if (o.byte_size as i64 - off as i64) < size as i64 {
                return false;
            }
            leaves
                .iter()
                .all(|(rel, leaf)| match slot_type(o, off + rel) {
                    Slot::Typed(t) => leaf_matches(t, leaf),
                    Slot::Fresh => untyped_range_is_fresh(o, off + rel, leaf.size().unwrap_or(1)),
                    Slot::Conflict => false,
                })
        }
        _ => false,
    }
}

/// Scalar leaves of a described type with their byte offsets.
type ExprLeaves<'a> = Vec<(u64, &'a TypeExpr)>;

/// Size, alignment, and scalar leaves of a described type.
fn expr_layout(t: &TypeExpr) -> Option<(u64, u64, ExprLeaves<'_>)> {
    match t.kind {
        TypeKind::Struct => {
            if t.children.is_empty() {
                return None;
            }
            let (mut off, mut align, mut leaves) = (0u64, 1u64, Vec::new());
            for c in &t.children {
                let (size, a, inner) = expr_layout(c)?;
                off = off.div_ceil(a) * a;
                leaves.extend(inner.into_iter().map(|(o, l)| (off + o, l)));
                off += size;
                align = align.max(a);
            }
            Some((off.div_ceil(align) * align, align, leaves))
        }
        TypeKind::Array => {
            let (es, a, inner) = expr_layout(t.children.first()?)?;
            let mut leaves = Vec::new();
            for i in 0..t.array_length {
                leaves.extend(inner.iter().map(|(o, l)| (i * es + o, *l)));
            }
            Some((es * t.array_length, a, leaves))
        }
        _ => {
            let size = t.size()?;
            Some((size, size, vec![(0, t)]))
        }
    }
}

/// If a (possibly nested) sub-object of struct `id` starts at `off`
/// within `ty`, returns its size.
fn struct_size_at(ty: &GuestType, off: u64, id: u32) -> Option<u64> {
    match ty {
        GuestType::Struct(def) => {
            let body = def.body()?;
            if def.id == id && off == 0 {
                return Some(body.size);
            }
            let f = body
                .fields
                .iter()
                .find(|f| off >= f.offset && off < f.offset + f.ty.size().unwrap_or(0))?;
            struct_size_at(&f.ty, off - f.offset, id)
        }
        GuestType::Array(elem, _) => {
            let es = elem.size()?;
            struct_size_at(elem, off % es, id)
        }
        _ => None,
    }
}

/// Does a scalar slot declared as `t` satisfy the description `s`?
fn leaf_matches(t: &GuestType, s: &TypeExpr) -> bool {
    match t {
        GuestType::Pointer(target) => {
            s.kind == TypeKind::Pointer && pointee_matches(target, &s.children[0])
        }
        GuestType::VaList => {
            s.kind == TypeKind::Struct && s.struct_ref.as_ref().is_some_and(|r| r.id == u32::MAX)
        }
        t => t.kind() == s.kind,
    }
}

/// Pointer targets: `void` on either side is a wildcard; functions compare
/// signatures by kind; everything else compares structurally.
fn pointee_matches(g: &GuestType, s: &TypeExpr) -> bool {
    if g.is_void() || s.kind == TypeKind::Void {
        return true;
    }
    match g {
        GuestType::Function(sig) => signature_matches(sig, s),
        GuestType::Pointer(inner) => {
            s.kind == TypeKind::Pointer && pointee_matches(inner, &s.children[0])
        }
        GuestType::Array(elem, n) => {
            s.kind == TypeKind::Array
                && s.array_length == *n
                && pointee_matches(elem, &s.children[0])
        }
        GuestType::Struct(def) => s.struct_ref.as_ref().is_some_and(|r| r.id == def.id),
        t => leaf_matches(t, s),
    }
}

/// Number of variadic arguments passed to the frame's function.
pub fn count_varargs(frame: &Frame) -> usize {
    frame.vararg_count()
}

/// Pointer to the boxed `i`-th variadic argument, or NULL when out of range.
pub fn get_vararg_raw(frame: &Frame, i: i64) -> GuestPointer {
    if i < 0 || i as usize >= count_varargs(frame) {
        return GuestPointer::null();
    }
    GuestPointer::to(
        frame.arguments[frame.fixed_param_count + i as usize].clone(),
        0,
    )
}

/// `try_cast(_get_vararg(i), t)` with NULL absorbing.
pub fn get_vararg(frame: &Frame, i: i64, t: &TypeExpr) -> GuestPointer {
    let raw = get_vararg_raw(frame, i);
    if raw.is_null() {
        return raw;
    }
    try_cast(&raw, t)
}

/// State behind a guest `va_list`: the variadic argument count, pointers
/// to the boxed arguments, and a cursor.
#[derive(Clone, Debug, Default)]
pub struct VarargsView {
    pub count: usize,
    pub slots: Vec<GuestPointer>,
    pub cursor: usize,
}

impl VarargsView {
    /// Materializes the view for the current frame.
    pub fn start(frame: &Frame) -> Self {
        let count = count_varargs(frame);
        VarargsView {
            count,
            slots: (0..count as i64)
                .map(|i| get_vararg_raw(frame, i))
                .collect(),
            cursor: 0,
        }
    }

    pub fn remaining(&self) -> usize {
        self.count - self.cursor
    }

    /// Pointer to the `i`-th not-yet-consumed argument cast to `t`, NULL
    /// when out of range or incompatible. Does not advance.
    pub fn peek(&self, i: i64, t: &TypeExpr) -> GuestPointer {
        if i < 0 || i as usize >= self.remaining() {
            return GuestPointer::null();
        }
        try_cast(&self.slots[self.cursor + i as usize], t)
    }

    /// The next argument as `ty`. Running past the end or a type mismatch
    /// is a `VarargViolation`.
    pub fn next_arg(&mut self, ty: &GuestType, rt: &mut Runtime) -> Result<Value, Violation> {
        if self.cursor >= self.count {
            return Err(Violation::new(
                DiagnosticKind::VarargViolation,
                format!(
                    "va_arg requested argument {} but only {} variadic argument(s) were passed",
                    self.cursor + 1,
                    self.count
                ),
            ));
        }
        let want = GuestType::pointer_to(ty.clone()).to_type_expr();
        let slot = try_cast(&self.slots[self.cursor], &want);
        if slot.is_null() {
            return Err(Violation::new(
                DiagnosticKind::VarargViolation,
                format!(
                    "variadic argument {} cannot be read as {ty}",
                    self.cursor + 1
                ),
            ));
        }
        self.cursor += 1;
        rt.load(&slot, ty)
    }

    pub fn end(&mut self) {
        self.cursor = 0;
    }
}

#[cfg(test)]
mod tests;
