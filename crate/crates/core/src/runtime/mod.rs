//! Managed guest memory.
//!
//! Every guest allocation is a [`ManagedObject`] and every guest address is
//! a [`GuestPointer`] (pointee reference plus signed byte offset). All
//! loads and stores go through [`Runtime::load`] / [`Runtime::store`], which
//! enforce spatial, temporal, and type checks.

mod object;
mod value;

use std::collections::BTreeMap;
use std::fmt;
use std::rc::Rc;

pub use object::{LocationKind, ManagedObject, ObjRef, Payload};
pub use value::{GuestPointer, VaListRef, Value};

use crate::diag::DiagnosticKind;
use crate::types::{GuestType, Layout, TypeExpr};

/// Index of a function in the program's function table.
pub type FuncId = usize;

/// Largest number of scalar slots a single declared object may hold.
pub const MAX_OBJECT_SLOTS: u64 = 1 << 24;

/// A failed runtime check, before the interpreter attaches a source span
/// and call stack.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub kind: DiagnosticKind,
    pub message: String,
}

impl Violation {
    pub fn new(kind: DiagnosticKind, message: impl Into<String>) -> Self {
        Violation {
            kind,
            message: message.into(),
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.kind, self.message)
    }
}

fn violation<T>(kind: DiagnosticKind, message: impl Into<String>) -> Result<T, Violation> {
    Err(Violation::new(kind, message))
}

/// Instrumentation counters over every checked access.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AccessStats {
    pub loads: u64,
    pub stores: u64,
    pub allocations: u64,
    pub frees: u64,
    /// Accesses rejected because they fell outside the object's extent.
    pub out_of_extent_attempts: u64,
    /// Accesses rejected because the object was no longer valid.
    pub dangling_attempts: u64,
    /// Accesses that passed the checks yet touched bytes outside the
    /// payload extent. An independent re-check; must stay zero.
    pub extent_violations: u64,
    /// `_size_left`/`_size_right` queries on illegal pointers.
    pub illegal_primitive_queries: u64,
}

/// One guest call frame: the objects it owns and its argument array.
#[derive(Debug)]
pub struct Frame {
    pub function: FuncId,
    pub name: Rc<str>,
    /// Local variable objects by local slot, allocated on first reach.
    pub locals: Vec<Option<ObjRef>>,
    /// All arguments in order: fixed parameters then boxed variadic ones.
    pub arguments: Vec<ObjRef>,
    pub fixed_param_count: usize,
    /// Every AUTOMATIC object created while this frame was on top.
    pub owned: Vec<ObjRef>,
}

impl Frame {
    pub fn new(
        function: FuncId,
        name: Rc<str>,
        local_count: usize,
        fixed_param_count: usize,
    ) -> Self {
        Frame {
            function,
            name,
            locals: vec![None; local_count],
            arguments: Vec::new(),
            fixed_param_count,
            owned: Vec::new(),
        }
    }

    pub fn vararg_count(&self) -> usize {
        self.arguments.len().saturating_sub(self.fixed_param_count)
    }
}

/// Owner of all guest objects for one interpreter instance.
#[derive(Debug)]
pub struct Runtime {
    next_id: u64,
    pub stats: AccessStats,
}

impl Default for Runtime {
    fn default() -> Self {
        Runtime::new()
    }
}

impl Runtime {
    pub fn new() -> Self {
        Runtime {
            next_id: 1,
            stats: AccessStats::default(),
        }
    }

    fn fresh(
        &mut self,
        element_type: GuestType,
        element_count: u64,
        byte_size: u64,
        location: LocationKind,
        payload: Payload,
    ) -> GuestPointer {
        let id = self.next_id;
        self.next_id += 1;
        self.stats.allocations += 1;
        let obj = ObjRef::new(ManagedObject {
            id,
            element_type,
            element_count,
            byte_size,
            location,
            payload,
        });
        GuestPointer::to(obj, 0)
    }

    /// Allocates `count` zero-initialized elements of `elem`.
    pub fn allocate(
        &mut self,
        elem: &GuestType,
        count: u64,
        loc: LocationKind,
    ) -> Result<GuestPointer, Violation> {
        if count == 0 {
            return violation(DiagnosticKind::InternalLimit, "allocation of zero elements");
        }
        if loc == LocationKind::Invalid {
            return violation(
                DiagnosticKind::InternalLimit,
                "allocation with INVALID location",
            );
        }
        let elem_size = elem.size().ok_or_else(|| {
            Violation::new(
                DiagnosticKind::TypeViolation,
                format!("cannot allocate incomplete type {elem}"),
            )
        })?;
        let byte_size = elem_size
            .checked_mul(count)
            .filter(|b| *b <= i64::MAX as u64)
            .ok_or_else(|| {
                Violation::new(DiagnosticKind::InternalLimit, "object byte size overflows")
            })?;
        let layout = elem.layout();
        let slots = (layout.leaves.len() as u64)
            .checked_mul(count)
            .filter(|s| *s <= MAX_OBJECT_SLOTS)
            .ok_or_else(|| {
                Violation::new(
                    DiagnosticKind::InternalLimit,
                    format!("object of {count} x {elem} exceeds the slot limit"),
                )
            })?;
        let cells = (0..slots as usize)
            .map(|i| Value::zero(&layout.leaves[i % layout.leaves.len().max(1)].ty))
            .collect();
        Ok(self.fresh(
            elem.clone(),
            count,
            byte_size,
            loc,
            Payload::Typed { layout, cells },
        ))
    }

    /// Allocates an untyped DYNAMIC region of `bytes` bytes (the `malloc`
    /// path). Cells acquire their type on first store; never-stored bytes
    /// read as zero. Zero-byte regions are distinct objects with no usable
    /// bytes.
    pub fn allocate_untyped(&mut self, bytes: u64) -> Result<GuestPointer, Violation> {
        if bytes > i64::MAX as u64 {
            return violation(DiagnosticKind::InternalLimit, "object byte size overflows");
        }
        Ok(self.fresh(
            GuestType::Char,
            bytes,
            bytes,
            LocationKind::Dynamic,
            Payload::Untyped(BTreeMap::new()),
        ))
    }

    pub fn allocate_function(&mut self, func: FuncId, ty: GuestType) -> GuestPointer {
        self.fresh(ty, 1, 0, LocationKind::Static, Payload::Function(func))
    }

    pub fn allocate_type_desc(&mut self, t: Rc<TypeExpr>, ty: GuestType) -> GuestPointer {
        self.fresh(ty, 1, 0, LocationKind::Static, Payload::TypeDesc(t))
    }

    /// Releases a DYNAMIC object through a pointer to its first byte.
    pub fn free_object(&mut self, p: &GuestPointer) -> Result<(), Violation> {
        let Some(obj) = &p.pointee else { return Ok(()) };
        let mut o = obj.borrow_mut();
        match o.location {
            LocationKind::Invalid => {
                return violation(
                    DiagnosticKind::InvalidFree,
                    format!("double free of object #{}", o.id),
                )
            }
            LocationKind::Automatic => {
                return violation(DiagnosticKind::InvalidFree, "free of a stack object")
            }
            LocationKind::Static => {
                return violation(DiagnosticKind::InvalidFree, "free of a static object")
            }
            LocationKind::Dynamic => {}
        }
        if p.offset != 0 {
            return violation(
                DiagnosticKind::InvalidFree,
                format!("free of a pointer {} bytes into object #{}", p.offset, o.id),
            );
        }
        o.invalidate();
        self.stats.frees += 1;
        Ok(())
    }

    /// Invalidates every AUTOMATIC object owned by the frame.
    pub fn end_scope(&mut self, frame: &mut Frame) {
        for obj in frame.owned.drain(..) {
            let mut o = obj.borrow_mut();
            if o.location == LocationKind::Automatic {
                o.invalidate();
            }
        }
    }

    /// Common spatial/temporal checks; returns the pointee and offset.
    fn check_access<'p>(
        &mut self,
        p: &'p GuestPointer,
        size: u64,
        what: &str,
    ) -> Result<(&'p ObjRef, u64), Violation> {
        let Some(obj) = &p.pointee else {
            return violation(
                DiagnosticKind::NullDereference,
                format!("{what} through a NULL pointer"),
            );
        };
        let o = obj.borrow();
        if o.location == LocationKind::Invalid {
            self.stats.dangling_attempts += 1;
            return violation(
                DiagnosticKind::UseAfterFree,
                format!("{what} of object #{} after its lifetime ended", o.id),
            );
        }
        let end = p.offset.checked_add(size as i64);
        if p.offset < 0 || end.is_none_or(|e| e as u64 > o.byte_size) {
            self.stats.out_of_extent_attempts += 1;
            return violation(
                DiagnosticKind::OutOfBounds,
                format!(
                    "{what} of {size} bytes at offset {} of a {}-byte object",
                    p.offset, o.byte_size
                ),
            );
        }
        Ok((obj, p.offset as u64))
    }

    fn audit(&mut self, obj: &ManagedObject, offset: u64, size: u64) {
        if offset.checked_add(size).is_none_or(|e| e > obj.byte_size) {
            self.stats.extent_violations += 1;
        }
    }

    pub fn load(&mut self, p: &GuestPointer, ty: &GuestType) -> Result<Value, Violation> {
        let size = ty.size().ok_or_else(|| {
            Violation::new(
                DiagnosticKind::TypeViolation,
                format!("load of incomplete type {ty}"),
            )
        })?;
        let (obj, off) = self.check_access(p, size, "load")?;
        self.stats.loads += 1;
        let o = obj.borrow();
        self.audit(&o, off, size);
        if ty.is_leaf() {
            o.payload.read_leaf(off, ty)
        } else {
            let layout = ty.layout();
            let vals = layout
                .leaves
                .iter()
                .map(|l| o.payload.read_leaf(off + l.offset, &l.ty))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Value::Aggregate(vals.into()))
        }
    }

    pub fn store(&mut self, p: &GuestPointer, ty: &GuestType, v: Value) -> Result<(), Violation> {
        let size = ty.size().ok_or_else(|| {
            Violation::new(
                DiagnosticKind::TypeViolation,
                format!("store of incomplete type {ty}"),
            )
        })?;
        let (obj, off) = self.check_access(p, size, "store")?;
        self.stats.stores += 1;
        let mut o = obj.borrow_mut();
        let (id, byte_size) = (o.id, o.byte_size);
        if off + size > byte_size {
            self.stats.extent_violations += 1;
        }
        if ty.is_leaf() {
            o.payload.write_leaf(off, ty, v)
        } else {
            let layout = ty.layout();
            let Value::Aggregate(vals) = v else {
                return violation(
                    DiagnosticKind::TypeViolation,
                    format!("store of non-aggregate into object #{id}"),
                );
            };
            // Check every leaf before mutating anything.
            for l in &layout.leaves {
                o.payload.check_leaf(off + l.offset, &l.ty)?;
            }
            for (l, v) in layout.leaves.iter().zip(vals.iter()) {
                o.payload.write_leaf(off + l.offset, &l.ty, v.clone())?;
            }
            Ok(())
        }
    }

    /// Copies `n` bytes worth of cells from `src` to `dst`. Both ranges
    /// must be valid and every cell must lie wholly inside its range.
    pub fn copy_bytes(
        &mut self,
        dst: &GuestPointer,
        src: &GuestPointer,
        n: u64,
    ) -> Result<(), Violation> {
        if n == 0 {
            return Ok(());
        }
        let (sobj, soff) = self.check_access(src, n, "copy from")?;
        let (dobj, doff) = self.check_access(dst, n, "copy into")?;
        let cells = sobj.borrow().payload.cells_in(soff, n)?;
        self.stats.loads += cells.len() as u64;
        let mut d = dobj.borrow_mut();
        // Validate the destination completely before mutating it.
        if let Payload::Typed { .. } = d.payload {
            d.payload.cells_in(doff, n)?;
            for (rel, ty, _) in &cells {
                d.payload.check_leaf(doff + rel, ty)?;
            }
        }
        d.payload.clear_range(doff, n)?;
        for (rel, ty, v) in cells {
            d.payload.write_leaf(doff + rel, &ty, v)?;
        }
        self.stats.stores += 1;
        Ok(())
    }

    /// Fills `n` bytes with the byte `c`, cell by cell.
    pub fn fill_bytes(&mut self, dst: &GuestPointer, c: u8, n: u64) -> Result<(), Violation> {
        if n == 0 {
            return Ok(());
        }
        let (dobj, doff) = self.check_access(dst, n, "fill")?;
        self.stats.stores += 1;
        dobj.borrow_mut().payload.fill(doff, n, c)
    }
}

impl Payload {
    fn not_data(&self) -> Violation {
        let what = match self {
            Payload::Function(_) => "a function object",
            Payload::TypeDesc(_) => "a type descriptor",
            _ => "a released object",
        };
        Violation::new(
            DiagnosticKind::TypeViolation,
            format!("data access to {what}"),
        )
    }

    fn typed_index(layout: &Layout, off: u64, ty: &GuestType) -> Result<usize, Violation> {
        if layout.size == 0 || layout.leaves.is_empty() {
            return violation(
                DiagnosticKind::TypeViolation,
                "access to an object without scalar slots",
            );
        }
        let elem = off / layout.size;
        let within = off % layout.size;
        let Some(li) = layout.leaf_at(within) else {
            return violation(
                DiagnosticKind::TypeViolation,
                format!("misaligned {ty} access at byte {off}"),
            );
        };
        let leaf = &layout.leaves[li];
        if leaf.ty.storage() != ty.storage() {
            return violation(
                DiagnosticKind::TypeViolation,
                format!("{ty} access to a {} slot at byte {off}", leaf.ty),
            );
        }
        Ok(elem as usize * layout.leaves.len() + li)
    }

    fn untyped_probe(
        cells: &BTreeMap<u64, (GuestType, Value)>,
        off: u64,
        ty: &GuestType,
    ) -> Result<Option<()>, Violation> {
        let size = ty.size().unwrap_or(1);
        if let Some((cty, _)) = cells.get(&off) {
            if cty.storage() == ty.storage() {
                return Ok(Some(()));
            }
            return violation(
                DiagnosticKind::TypeViolation,
                format!("{ty} access to heap bytes already holding {cty}"),
            );
        }
        let before = cells.range(..off).next_back();
        let overlaps_before = before.is_some_and(|(o, (t, _))| o + t.size().unwrap_or(1) > off);
        let overlaps_after = cells.range(off + 1..off + size).next().is_some();
        if overlaps_before || overlaps_after {
            return violation(
                DiagnosticKind::TypeViolation,
                format!("{ty} access partially overlaps a typed heap cell at byte {off}"),
            );
        }
        Ok(None)
    }

    fn check_leaf(&self, off: u64, ty: &GuestType) -> Result<(), Violation> {
        match self {
            Payload::Typed { layout, .. } => Payload::typed_index(layout, off, ty).map(|_| ()),
            Payload::Untyped(cells) => Payload::untyped_probe(cells, off, ty).map(|_| ()),
            other => Err(other.not_data()),
        }
    }

    fn read_leaf(&self, off: u64, ty: &GuestType) -> Result<Value, Violation> {
        match self {
            Payload::Typed { layout, cells } => {
                let i = Payload::typed_index(layout, off, ty)?;
                Ok(cells[i].clone())
            }
            Payload::Untyped(cells) => match Payload::untyped_probe(cells, off, ty)? {
                Some(()) => Ok(cells[&off].1.clone()),
                None => Ok(Value::zero(ty)),
            },
            other => Err(other.not_data()),
        }
    }

    fn write_leaf(&mut self, off: u64, ty: &GuestType, v: Value) -> Result<(), Violation> {
        match self {
            Payload::Typed { layout, cells } => {
                let i = Payload::typed_index(layout, off, ty)?;
                cells[i] = v;
                Ok(())
            }
            Payload::Untyped(cells) => {
                match Payload::untyped_probe(cells, off, ty)? {
                    Some(()) => cells.get_mut(&off).expect("probed cell").1 = v,
                    None => {
                        cells.insert(off, (ty.clone(), v));
                    }
                }
                Ok(())
            }
            other => Err(other.not_data()),
        }
    }

    /// Cells wholly inside `[off, off + n)`, relative to `off`.
    fn cells_in(&self, off: u64, n: u64) -> Result<Vec<(u64, GuestType, Value)>, Violation> {
        let end = off + n;
        match self {
            Payload::Typed { layout, cells } => {
                let mut out = Vec::new();
                let es = layout.size.max(1);
                for elem in off / es..end.div_ceil(es) {
                    for (li, leaf) in layout.leaves.iter().enumerate() {
                        let start = elem * es + leaf.offset;
                        let stop = start + leaf.ty.size().unwrap_or(1);
                        if stop <= off || start >= end {
                            continue;
                        }
                        if start < off || stop > end {
                            return violation(
                                DiagnosticKind::TypeViolation,
                                format!("byte range splits a {} slot at byte {start}", leaf.ty),
                            );
                        }
                        let idx = elem as usize * layout.leaves.len() + li;
                        out.push((start - off, leaf.ty.clone(), cells[idx].clone()));
                    }
                }
                Ok(out)
            }
            Payload::Untyped(cells) => {
                Payload::edge_check(cells, off, end)?;
                Ok(cells
                    .range(off..end)
                    .map(|(o, (t, v))| (o - off, t.clone(), v.clone()))
                    .collect())
            }
            other => Err(other.not_data()),
        }
    }

    fn edge_check(
        cells: &BTreeMap<u64, (GuestType, Value)>,
        off: u64,
        end: u64,
    ) -> Result<(), Violation> {
        if let Some((o, (t, _))) = cells.range(..off).next_back() {
            if o + t.size().unwrap_or(1) > off {
                return violation(
                    DiagnosticKind::TypeViolation,
                    format!("byte range splits a {t} cell at byte {o}"),
                );
            }
        }
        if let Some((o, (t, _))) = cells.range(off..end).next_back() {
            if o + t.size().unwrap_or(1) > end {
                return violation(
                    DiagnosticKind::TypeViolation,
                    format!("byte range splits a {t} cell at byte {o}"),
                );
            }
        }
        Ok(())
    }

    /// Resets the cells of `[off, off + n)` to zero (untyped cells are
    /// dropped, which reads back as zero).
    fn clear_range(&mut self, off: u64, n: u64) -> Result<(), Violation> {
        let end = off + n;
        match self {
            Payload::Typed { .. } => {
                let cells = self.cells_in(off, n)?;
                for (rel, ty, _) in cells {
                    self.write_leaf(off + rel, &ty, Value::zero(&ty))?;
                }
                Ok(())
            }
            Payload::Untyped(cells) => {
                Payload::edge_check(cells, off, end)?;
                let keys: Vec<u64> = cells.range(off..end).map(|(k, _)| *k).collect();
                for k in keys {
                    cells.remove(&k);
                }
                Ok(())
            }
            other => Err(other.not_data()),
        }
    }

    fn fill(&mut self, off: u64, n: u64, c: u8) -> Result<(), Violation> {
        if let Payload::Untyped(_) = self {
            self.clear_range(off, n)?;
            if c != 0 {
                for i in 0..n {
                    self.write_leaf(off + i, &GuestType::Char, Value::Int(c as i8 as i64))?;
                }
            }
            return Ok(());
        }
        let cells = self.cells_in(off, n)?;
        let values = cells
            .iter()
            .map(|(_, ty, _)| {
                Value::from_repeated_byte(ty, c).ok_or_else(|| {
                    Violation::new(
                        DiagnosticKind::TypeViolation,
                        format!("byte fill of a {ty} slot with {c}"),
                    )
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        for ((rel, ty, _), v) in cells.into_iter().zip(values) {
            self.write_leaf(off + rel, &ty, v)?;
        }
        Ok(())
    }
}
