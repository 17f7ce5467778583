//! The guest C library. It is written in MiniC and compiled in front of
//! every program; host intrinsics cover raw I/O, allocation, and byte
//! copies.

/// Source of the libc prelude.
pub const PRELUDE_SOURCE: &str = include_str!("prelude.c");

/// Functions the prelude provides to guest programs.
pub const EXPORTED_FUNCTIONS: &[&str] = &[
    "size_right",
    "size_left",
    "freeable",
    "malloc",
    "calloc",
    "realloc",
    "free",
    "memcpy",
    "memset",
    "memcmp",
    "strlen",
    "strcpy",
    "strncpy",
    "strcat",
    "strncmp",
    "strcmp",
    "strchr",
    "isdigit",
    "isspace",
    "isupper",
    "islower",
    "isalpha",
    "toupper",
    "tolower",
    "abs",
    "labs",
    "atol",
    "atoi",
    "putchar",
    "getchar",
    "fputc",
    "putc",
    "fgetc",
    "getc",
    "fputs",
    "puts",
    "gets_s",
    "gets",
    "fgets",
    "vfprintf",
    "vprintf",
    "vsnprintf",
    "vsprintf",
    "printf",
    "fprintf",
    "sprintf",
    "snprintf",
    "sscanf",
    "qsort",
    "bsearch",
];
