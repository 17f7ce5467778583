use std::rc::Rc;

use proptest::prelude::*;

use super::*;
use crate::types::Signature;

fn int_t() -> TypeExpr {
    TypeExpr::scalar(TypeKind::Int)
}

fn func_type(ret: GuestType, params: Vec<GuestType>) -> GuestType {
    GuestType::Function(Rc::new(Signature {
        ret,
        params,
        variadic: false,
    }))
}

fn int_array(rt: &mut Runtime, n: u64, loc: LocationKind) -> GuestPointer {
    rt.allocate(&GuestType::Int, n, loc).unwrap()
}

#[test]
fn interior_pointer_spaces() {
    let mut rt = Runtime::new();
    let arr = int_array(&mut rt, 10, LocationKind::Dynamic);
    let p = arr.offset_by(16);
    assert_eq!((size_left_raw(&p), size_right_raw(&p)), (16, 24));
    assert_eq!((size_left(&p), size_right(&p)), (16, 24));
}

#[test]
fn composites_answer_minus_one_for_bad_pointers() {
    let mut rt = Runtime::new();
    let arr = int_array(&mut rt, 10, LocationKind::Dynamic);
    let end = arr.offset_by(40);
    assert_eq!((size_left(&end), size_right(&end)), (40, 0));
    assert_eq!(size_right(&arr.offset_by(44)), -1);
    assert_eq!(size_left(&arr.offset_by(-4)), -1);
    assert_eq!(size_right(&GuestPointer::null()), -1);
    rt.free_object(&arr).unwrap();
    assert_eq!(size_right(&arr), -1);
    assert_eq!(size_left(&arr), -1);
}

#[test]
fn location_and_freeable() {
    let mut rt = Runtime::new();
    let d = int_array(&mut rt, 2, LocationKind::Dynamic);
    let s = int_array(&mut rt, 2, LocationKind::Static);
    let a = int_array(&mut rt, 2, LocationKind::Automatic);
    assert_eq!(location(&GuestPointer::null()), LocationKind::Invalid);
    assert_eq!(location(&s), LocationKind::Static);
    assert_eq!(location(&a), LocationKind::Automatic);
    assert!(freeable(&d));
    assert!(!freeable(&d.offset_by(4)));
    assert!(!freeable(&s) && !freeable(&a) && !freeable(&GuestPointer::null()));
    rt.free_object(&d).unwrap();
    assert_eq!(location(&d), LocationKind::Invalid);
    assert!(!freeable(&d));
}

#[test]
fn data_casts_follow_the_slot_type() {
    let mut rt = Runtime::new();
    let arr = int_array(&mut rt, 10, LocationKind::Dynamic);
    let p = arr.offset_by(16);
    assert_eq!(try_cast(&p, &TypeExpr::pointer(int_t())), p);
    assert!(try_cast(&p, &TypeExpr::pointer(TypeExpr::scalar(TypeKind::Double))).is_null());
    assert!(try_cast(&GuestPointer::null(), &TypeExpr::pointer(int_t())).is_null());
}

#[test]
fn function_casts_check_the_signature() {
    let mut rt = Runtime::new();
    let f = rt.allocate_function(0, func_type(GuestType::Int, vec![GuestType::Int]));
    let square = rt.allocate_function(1, func_type(GuestType::Double, vec![GuestType::Int]));
    let want = TypeExpr::function(int_t(), vec![int_t()], false);
    assert_eq!(try_cast(&f, &want), f);
    assert!(try_cast(&square, &want).is_null());

    // A slot holding a function pointer, as in `try_cast(&f, type(f))`.
    let fp_ty = GuestType::pointer_to(func_type(GuestType::Int, vec![GuestType::Int]));
    let slot = rt.allocate(&fp_ty, 1, LocationKind::Automatic).unwrap();
    rt.store(&slot, &fp_ty, Value::Ptr(f.clone())).unwrap();
    assert_eq!(try_cast(&slot, &want), slot);
    rt.store(&slot, &fp_ty, Value::Ptr(square)).unwrap();
    assert!(try_cast(&slot, &want).is_null());
    rt.store(&slot, &fp_ty, Value::Ptr(GuestPointer::null()))
        .unwrap();
    assert!(try_cast(&slot, &want).is_null());
}

fn frame_with_varargs(
    rt: &mut Runtime,
    fixed: usize,
    values: &[Value],
    types: &[GuestType],
) -> Frame {
    let mut frame = Frame::new(0, "avg".into(), 0, fixed);
    for _ in 0..fixed {
        let p = int_array(rt, 1, LocationKind::Automatic);
        frame.arguments.push(p.pointee.unwrap());
    }
    for (v, t) in values.iter().zip(types) {
        let p = rt.allocate(t, 1, LocationKind::Automatic).unwrap();
        rt.store(&p, t, v.clone()).unwrap();
        frame.arguments.push(p.pointee.unwrap());
    }
    frame
}

#[test]
fn vararg_accessors() {
    let mut rt = Runtime::new();
    let vals = [Value::Int(1), Value::Int(2), Value::Int(3)];
    let frame = frame_with_varargs(
        &mut rt,
        1,
        &vals,
        &[GuestType::Int, GuestType::Int, GuestType::Int],
    );
    assert_eq!(count_varargs(&frame), 3);
    let second = get_vararg_raw(&frame, 1);
    assert_eq!(rt.load(&second, &GuestType::Int).unwrap(), Value::Int(2));
    assert!(get_vararg_raw(&frame, 3).is_null());
    assert!(get_vararg_raw(&frame, -1).is_null());
    let first = get_vararg(&frame, 0, &TypeExpr::pointer(int_t()));
    assert_eq!(rt.load(&first, &GuestType::Int).unwrap(), Value::Int(1));
    assert!(get_vararg(
        &frame,
        0,
        &TypeExpr::pointer(TypeExpr::scalar(TypeKind::Double))
    )
    .is_null());

    let plain = Frame::new(0, "f".into(), 0, 2);
    assert_eq!(count_varargs(&plain), 0);
}

#[test]
fn varargs_view_enforces_count_and_type() {
    let mut rt = Runtime::new();
    let vals = [Value::Int(7), Value::Float(1.5)];
    let frame = frame_with_varargs(&mut rt, 1, &vals, &[GuestType::Int, GuestType::Double]);
    let mut view = VarargsView::start(&frame);
    assert_eq!(
        view.next_arg(&GuestType::Int, &mut rt).unwrap(),
        Value::Int(7)
    );
    let err = view.next_arg(&GuestType::Int, &mut rt).unwrap_err();
    assert_eq!(err.kind, DiagnosticKind::VarargViolation);
    assert_eq!(
        view.next_arg(&GuestType::Double, &mut rt).unwrap(),
        Value::Float(1.5)
    );
    let err = view.next_arg(&GuestType::Double, &mut rt).unwrap_err();
    assert_eq!(err.kind, DiagnosticKind::VarargViolation);
    view.end();
    assert_eq!(view.remaining(), 2);
    assert!(!view.peek(0, &TypeExpr::pointer(int_t())).is_null());
    assert!(view.peek(1, &TypeExpr::pointer(int_t())).is_null());
    assert!(view.peek(2, &TypeExpr::pointer(int_t())).is_null());
}

fn kind_strategy() -> impl Strategy<Value = LocationKind> {
    prop_oneof![
        Just(LocationKind::Static),
        Just(LocationKind::Automatic),
        Just(LocationKind::Dynamic),
    ]
}

proptest! {
    #[test]
    fn size_composites_agree_with_the_primitives(
        n in 1u64..32,
        off in -16i64..160,
        loc in kind_strategy(),
        free in any::<bool>(),
    ) {
        let mut rt = Runtime::new();
        let base = int_array(&mut rt, n, loc);
        let p = base.offset_by(off);
        if free && loc == LocationKind::Dynamic {
            rt.free_object(&base).unwrap();
        }
        let (l, r) = (size_left(&p), size_right(&p));
        let legal = is_legal(&p);
        let raw_ok = size_left_raw(&p) >= 0 && size_right_raw(&p) >= 0;
        prop_assert_eq!(l == -1, !legal || !raw_ok);
        prop_assert_eq!(r == -1, !legal || !raw_ok);
        if l >= 0 && r >= 0 {
            prop_assert_eq!((l + r) as u64, n * 4);
        }
        prop_assert_eq!(freeable(&p), location(&p) == LocationKind::Dynamic && size_left_raw(&p) == 0);
        let t = TypeExpr::pointer(int_t());
        let c = try_cast(&p, &t);
        prop_assert!(c.is_null() || c == p);
        prop_assert_eq!(try_cast(&c, &t), c);
    }
}
