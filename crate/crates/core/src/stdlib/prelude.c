/* Robust libc subset. Every function validates its arguments through the
   introspection interface, reports benign errors through errno, and never
   triggers a runtime abort itself. */

int errno;

struct FILE {
    int fd;
};

FILE __stdin_file = {0};
FILE __stdout_file = {1};
FILE __stderr_file = {2};
FILE *stdin = &__stdin_file;
FILE *stdout = &__stdout_file;
FILE *stderr = &__stderr_file;

/* ---- object bounds and location ---- */

long size_right(const void *ptr) {
    if (location(ptr) == INVALID) {
        return -1;
    }
    long left = _size_left(ptr);
    long right = _size_right(ptr);
    if (left < 0 || right < 0) {
        return -1;
    }
    return right;
}

long size_left(const void *ptr) {
    if (location(ptr) == INVALID) {
        return -1;
    }
    long left = _size_left(ptr);
    long right = _size_right(ptr);
    if (left < 0 || right < 0) {
        return -1;
    }
    return left;
}

int freeable(const void *ptr) {
    return location(ptr) == DYNAMIC && _size_left(ptr) == 0;
}

/* A char may be read or written at p: in bounds and stored as char (or
   still untyped heap memory). */
static int __char_ok(const char *p) {
    return size_right(p) > 0 && try_cast(p, type(p)) != NULL;
}

/* ---- allocation ---- */

void *malloc(size_t size) {
    void *p = __host_malloc(size);
    if (p == NULL) {
        errno = ENOMEM;
    }
    return p;
}

void *calloc(size_t count, size_t size) {
    if (size != 0 && count > SIZE_MAX / size) {
        errno = ENOMEM;
        return NULL;
    }
    /* Untouched heap memory reads as zero. */
    return malloc(count * size);
}

void free(void *ptr) {
    if (ptr == NULL) {
        return;
    }
    if (!freeable(ptr)) {
        errno = EINVAL;
        return;
    }
    __host_free(ptr);
}

void *realloc(void *ptr, size_t size) {
    if (ptr == NULL) {
        return malloc(size);
    }
    if (!freeable(ptr)) {
        errno = EINVAL;
        return NULL;
    }
    void *fresh = malloc(size);
    if (fresh == NULL) {
        return NULL;
    }
    size_t old = size_right(ptr);
    size_t n = old < size ? old : size;
    if (__host_memcpy(fresh, ptr, n) != 0) {
        __host_free(fresh);
        errno = EINVAL;
        return NULL;
    }
    __host_free(ptr);
    return fresh;
}

/* ---- memory ---- */

static int __range_ok(const void *p, size_t n) {
    long right = size_right(p);
    return right >= 0 && (size_t)right >= n;
}

void *memcpy(void *dst, const void *src, size_t n) {
    if (n == 0) {
        return dst;
    }
    if (!__range_ok(dst, n) || !__range_ok(src, n) || __host_memcpy(dst, src, n) != 0) {
        errno = EINVAL;
    }
    return dst;
}

void *memset(void *dst, int c, size_t n) {
    if (n == 0) {
        return dst;
    }
    if (!__range_ok(dst, n) || __host_memset(dst, c, n) != 0) {
        errno = EINVAL;
    }
    return dst;
}

int memcmp(const void *a, const void *b, size_t n) {
    const char *x = a;
    const char *y = b;
    size_t i;
    for (i = 0; i < n; i++) {
        if (!__char_ok(x + i) || !__char_ok(y + i)) {
            errno = EINVAL;
            return 0;
        }
        int cx = x[i] & 255;
        int cy = y[i] & 255;
        if (cx != cy) {
            return cx - cy;
        }
    }
    return 0;
}

/* ---- strings ---- */

size_t strlen(const char *str) {
    size_t len = 0;
    while (__char_ok(str) && *str != '\0') {
        len++;
        str++;
    }
    return len;
}

char *strcpy(char *dst, const char *src) {
    if (!__char_ok(dst) || !__char_ok(src)) {
        errno = EINVAL;
        return dst;
    }
    long i = 0;
    /* Stops at the end of either buffer; the terminator is written only
       when it fits. */
    while (__char_ok(dst + i) && __char_ok(src + i)) {
        char c = src[i];
        dst[i] = c;
        if (c == '\0') {
            break;
        }
        i++;
    }
    return dst;
}

char *strncpy(char *dst, const char *src, size_t n) {
    if (n == 0) {
        return dst;
    }
    if (!__char_ok(dst) || !__char_ok(src)) {
        errno = EINVAL;
        return dst;
    }
    size_t i = 0;
    int ended = 0;
    while (i < n && __char_ok(dst + i)) {
        char c = '\0';
        if (!ended && __char_ok(src + i)) {
            c = src[i];
        }
        if (c == '\0') {
            ended = 1;
        }
        dst[i] = c;
        i++;
    }
    return dst;
}

char *strcat(char *dst, const char *src) {
    if (!__char_ok(dst) || !__char_ok(src)) {
        errno = EINVAL;
        return dst;
    }
    size_t end = strlen(dst);
    if (__char_ok(dst + end)) {
        strcpy(dst + end, src);
    }
    return dst;
}

/* The end of a buffer counts as the end of the string. */
static int __char_at(const char *s, size_t i) {
    if (!__char_ok(s + i)) {
        return 0;
    }
    return s[i] & 255;
}

int strncmp(const char *a, const char *b, size_t n) {
    if (size_right(a) < 0 || size_right(b) < 0) {
        errno = EINVAL;
    }
    size_t i;
    for (i = 0; i < n; i++) {
        int ca = __char_at(a, i);
        int cb = __char_at(b, i);
        if (ca != cb) {
            return ca - cb;
        }
        if (ca == 0) {
            return 0;
        }
    }
    return 0;
}

int strcmp(const char *a, const char *b) {
    return strncmp(a, b, SIZE_MAX);
}

char *strchr(const char *s, int c) {
    if (size_right(s) < 0) {
        errno = EINVAL;
        return NULL;
    }
    size_t i = 0;
    while (__char_ok(s + i)) {
        if ((s[i] & 255) == (c & 255)) {
            return (char *)(s + i);
        }
        if (s[i] == '\0') {
            return NULL;
        }
        i++;
    }
    return NULL;
}

int isdigit(int c) {
    return c >= '0' && c <= '9';
}

int isspace(int c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

int isupper(int c) {
    return c >= 'A' && c <= 'Z';
}

int islower(int c) {
    return c >= 'a' && c <= 'z';
}

int isalpha(int c) {
    return isupper(c) || islower(c);
}

int toupper(int c) {
    return islower(c) ? c - 'a' + 'A' : c;
}

int tolower(int c) {
    return isupper(c) ? c - 'A' + 'a' : c;
}

int abs(int x) {
    return x < 0 ? -x : x;
}

long labs(long x) {
    return x < 0 ? -x : x;
}

long atol(const char *s) {
    if (size_right(s) < 0) {
        errno = EINVAL;
        return 0;
    }
    size_t i = 0;
    while (isspace(__char_at(s, i))) {
        i++;
    }
    int neg = 0;
    int c = __char_at(s, i);
    if (c == '-' || c == '+') {
        neg = c == '-';
        i++;
    }
    long value = 0;
    while (isdigit(__char_at(s, i))) {
        value = value * 10 + (__char_at(s, i) - '0');
        i++;
    }
    return neg ? -value : value;
}

int atoi(const char *s) {
    return (int)atol(s);
}

/* ---- character I/O ---- */

int putchar(int c) {
    return __host_putchar(1, c);
}

int getchar(void) {
    return __host_getchar();
}

static int __stream_fd(FILE *stream) {
    if (try_cast(stream, type(stream)) == NULL) {
        return -1;
    }
    return stream->fd;
}

int fputc(int c, FILE *stream) {
    int fd = __stream_fd(stream);
    if (fd != 1 && fd != 2) {
        errno = EINVAL;
        return EOF;
    }
    return __host_putchar(fd, c);
}

int putc(int c, FILE *stream) {
    return fputc(c, stream);
}

int fgetc(FILE *stream) {
    if (__stream_fd(stream) != 0) {
        errno = EINVAL;
        return EOF;
    }
    return __host_getchar();
}

int getc(FILE *stream) {
    return fgetc(stream);
}

static int __write_string(int fd, const char *s) {
    int n = 0;
    while (__char_ok(s + n) && s[n] != '\0') {
        __host_putchar(fd, s[n]);
        n++;
    }
    return n;
}

int fputs(const char *s, FILE *stream) {
    int fd = __stream_fd(stream);
    if (size_right(s) < 0 || (fd != 1 && fd != 2)) {
        errno = EINVAL;
        return EOF;
    }
    __write_string(fd, s);
    return 0;
}

int puts(const char *s) {
    if (size_right(s) < 0) {
        errno = EINVAL;
        return EOF;
    }
    /* An unterminated string is printed up to the end of its buffer. */
    __write_string(1, s);
    __host_putchar(1, '\n');
    return 0;
}

/* Reads at most n - 1 characters of one line. The size is checked
   against the real buffer before anything is read. */
char *gets_s(char *str, rsize_t n) {
    if (n == 0 || (long)n < 0 || size_right(str) < (long)n || try_cast(str, type(str)) == NULL) {
        errno = EINVAL;
        return NULL;
    }
    size_t i = 0;
    int overflow = 0;
    int c = __host_getchar();
    if (c == EOF) {
        return NULL;
    }
    while (c != EOF && c != '\n') {
        if (i + 1 < n) {
            str[i] = (char)c;
            i++;
        } else {
            overflow = 1;
        }
        c = __host_getchar();
    }
    if (overflow) {
        str[0] = '\0';
        errno = EINVAL;
        return NULL;
    }
    str[i] = '\0';
    return str;
}

char *gets(char *str) {
    long size = size_right(str);
    return gets_s(str, size == -1 ? 0 : size);
}

char *fgets(char *str, int n, FILE *stream) {
    if (__stream_fd(stream) != 0 || n <= 0 || size_right(str) < n || try_cast(str, type(str)) == NULL) {
        errno = EINVAL;
        return NULL;
    }
    int i = 0;
    while (i + 1 < n) {
        int c = __host_getchar();
        if (c == EOF) {
            break;
        }
        str[i] = (char)c;
        i++;
        if (c == '\n') {
            break;
        }
    }
    if (i == 0) {
        return NULL;
    }
    str[i] = '\0';
    return str;
}

/* ---- formatted output ---- */

/* Output sink: a file descriptor, or a buffer of `cap` usable chars. */
struct __out {
    int fd;
    char *buf;
    long cap;
    long len;
};

struct __spec {
    int left;
    int zero;
    int width;
    int prec;
    int lng;
    int conv;
    long next;
};

static void __out_char(struct __out *o, int c) {
    if (o->buf == NULL) {
        __host_putchar(o->fd, c);
    } else if (o->len < o->cap) {
        o->buf[o->len] = (char)c;
    }
    o->len++;
}

static void __out_pad(struct __out *o, int c, long n) {
    while (n > 0) {
        __out_char(o, c);
        n--;
    }
}

/* Emits `n` chars of `s` with an optional sign, padded to the width. */
static void __out_field(struct __out *o, const char *s, long n, int neg, struct __spec *sp) {
    long total = n + neg;
    long pad = sp->width > total ? sp->width - total : 0;
    if (!sp->left && !sp->zero) {
        __out_pad(o, ' ', pad);
    }
    if (neg) {
        __out_char(o, '-');
    }
    if (!sp->left && sp->zero) {
        __out_pad(o, '0', pad);
    }
    long i;
    for (i = 0; i < n; i++) {
        __out_char(o, s[i]);
    }
    if (sp->left) {
        __out_pad(o, ' ', pad);
    }
}

static void __out_unsigned(struct __out *o, unsigned long v, unsigned long base, int upper, int neg, struct __spec *sp) {
    char digits[24];
    char rev[24];
    int n = 0;
    const char *set = upper ? "0123456789ABCDEF" : "0123456789abcdef";
    do {
        rev[n] = set[v % base];
        n++;
        v = v / base;
    } while (v != 0);
    int i;
    for (i = 0; i < n; i++) {
        digits[i] = rev[n - 1 - i];
    }
    __out_field(o, digits, n, neg, sp);
}

/* Parses the conversion starting after '%' at index i. Returns 0 for
   anything unsupported. */
static int __parse_spec(const char *fmt, long i, struct __spec *sp) {
    sp->left = 0;
    sp->zero = 0;
    sp->width = 0;
    sp->prec = -1;
    sp->lng = 0;
    while (__char_at(fmt, i) == '-' || __char_at(fmt, i) == '0') {
        if (fmt[i] == '-') {
            sp->left = 1;
        } else {
            sp->zero = 1;
        }
        i++;
    }
    while (isdigit(__char_at(fmt, i))) {
        sp->width = sp->width * 10 + (fmt[i] - '0');
        i++;
    }
    if (__char_at(fmt, i) == '.') {
        i++;
        sp->prec = 0;
        while (isdigit(__char_at(fmt, i))) {
            sp->prec = sp->prec * 10 + (fmt[i] - '0');
            i++;
        }
    }
    int c = __char_at(fmt, i);
    if (c == 'l' || c == 'z') {
        sp->lng = 1;
        i++;
        if (c == 'l' && __char_at(fmt, i) == 'l') {
            i++;
        }
    }
    c = __char_at(fmt, i);
    sp->conv = c;
    sp->next = i + 1;
    if (c == '%') {
        return !sp->lng;
    }
    if (c == 'd' || c == 'i' || c == 'u' || c == 'x' || c == 'X') {
        return 1;
    }
    if (c == 'c' || c == 's' || c == 'f') {
        return !sp->lng;
    }
    return 0;
}

/* Checks every conversion against the remaining variadic arguments:
   the count must match exactly and each argument must have the type its
   specifier expects. Returns the number of conversions or -1. */
static int __check_format(const char *fmt, va_list ap) {
    int as_int = 0;
    long as_long = 0;
    double as_double = 0.0;
    char *as_string = NULL;
    struct __spec sp;
    if (!__char_ok(fmt)) {
        return -1;
    }
    long i = 0;
    int k = 0;
    while (__char_at(fmt, i) != 0) {
        if (fmt[i] != '%') {
            i++;
            continue;
        }
        if (!__parse_spec(fmt, i + 1, &sp)) {
            return -1;
        }
        i = sp.next;
        if (sp.conv == '%') {
            continue;
        }
        void *arg;
        if (sp.conv == 'f') {
            arg = __va_peek(ap, k, type(&as_double));
        } else if (sp.conv == 's') {
            arg = __va_peek(ap, k, type(&as_string));
        } else if (sp.lng) {
            arg = __va_peek(ap, k, type(&as_long));
        } else {
            arg = __va_peek(ap, k, type(&as_int));
        }
        if (arg == NULL) {
            return -1;
        }
        k++;
    }
    if (k != __va_count(ap)) {
        return -1;
    }
    return k;
}

static void __format(struct __out *o, const char *fmt, va_list ap) {
    struct __spec sp;
    long i = 0;
    while (__char_at(fmt, i) != 0) {
        if (fmt[i] != '%') {
            __out_char(o, fmt[i]);
            i++;
            continue;
        }
        __parse_spec(fmt, i + 1, &sp);
        i = sp.next;
        int c = sp.conv;
        if (c == '%') {
            __out_char(o, '%');
        } else if (c == 'd' || c == 'i') {
            long v = sp.lng ? va_arg(ap, long) : va_arg(ap, int);
            int neg = v < 0;
            unsigned long mag = neg ? (unsigned long)0 - (unsigned long)v : (unsigned long)v;
            __out_unsigned(o, mag, 10, 0, neg, &sp);
        } else if (c == 'u' || c == 'x' || c == 'X') {
            unsigned long v = sp.lng ? va_arg(ap, unsigned long) : va_arg(ap, unsigned int);
            __out_unsigned(o, v, c == 'u' ? 10 : 16, c == 'X', 0, &sp);
        } else if (c == 'c') {
            char ch[1];
            ch[0] = (char)va_arg(ap, int);
            __out_field(o, ch, 1, 0, &sp);
        } else if (c == 's') {
            char *s = va_arg(ap, char *);
            if (size_right(s) < 0) {
                __out_field(o, "(null)", 6, 0, &sp);
            } else {
                long n = 0;
                while ((sp.prec < 0 || n < sp.prec) && __char_at(s, n) != 0) {
                    n++;
                }
                __out_field(o, s, n, 0, &sp);
            }
        } else {
            char text[360];
            double v = va_arg(ap, double);
            int n = __host_fmt_double(text, 360, v, sp.prec < 0 ? 6 : sp.prec);
            if (n > 359) {
                n = 359;
            }
            if (text[0] == '-') {
                __out_field(o, text + 1, n - 1, 1, &sp);
            } else {
                __out_field(o, text, n, 0, &sp);
            }
        }
    }
}

int vfprintf(FILE *stream, const char *fmt, va_list ap) {
    int fd = __stream_fd(stream);
    if ((fd != 1 && fd != 2) || __check_format(fmt, ap) < 0) {
        errno = EINVAL;
        return -1;
    }
    struct __out o;
    o.fd = fd;
    o.buf = NULL;
    o.cap = 0;
    o.len = 0;
    __format(&o, fmt, ap);
    return (int)o.len;
}

int vprintf(const char *fmt, va_list ap) {
    return vfprintf(stdout, fmt, ap);
}

/* Writes at most n - 1 chars plus a terminator, never past the real end
   of the buffer. Returns the untruncated length. */
int vsnprintf(char *buf, size_t n, const char *fmt, va_list ap) {
    long limit = (long)n;
    if (limit < 0) {
        limit = LONG_MAX;
    }
    if (limit > 0) {
        long room = size_right(buf);
        if (room <= 0 || try_cast(buf, type(buf)) == NULL) {
            errno = EINVAL;
            return -1;
        }
        if (room < limit) {
            limit = room;
        }
    }
    if (__check_format(fmt, ap) < 0) {
        errno = EINVAL;
        return -1;
    }
    struct __out o;
    o.fd = 0;
    o.buf = buf;
    o.cap = limit > 0 ? limit - 1 : 0;
    o.len = 0;
    if (limit == 0) {
        o.buf = (char *)"";
    }
    __format(&o, fmt, ap);
    if (limit > 0) {
        buf[o.len < o.cap ? o.len : o.cap] = '\0';
    }
    return (int)o.len;
}

int vsprintf(char *buf, const char *fmt, va_list ap) {
    long room = size_right(buf);
    return vsnprintf(buf, room < 0 ? 1 : room, fmt, ap);
}

int printf(const char *fmt, ...) {
    va_list ap;
    va_start(ap, fmt);
    int r = vfprintf(stdout, fmt, ap);
    va_end(ap);
    return r;
}

int fprintf(FILE *stream, const char *fmt, ...) {
    va_list ap;
    va_start(ap, fmt);
    int r = vfprintf(stream, fmt, ap);
    va_end(ap);
    return r;
}

int sprintf(char *buf, const char *fmt, ...) {
    va_list ap;
    va_start(ap, fmt);
    int r = vsprintf(buf, fmt, ap);
    va_end(ap);
    return r;
}

int snprintf(char *buf, size_t n, const char *fmt, ...) {
    va_list ap;
    va_start(ap, fmt);
    int r = vsnprintf(buf, n, fmt, ap);
    va_end(ap);
    return r;
}

/* ---- formatted input: %d and %s only ---- */

int sscanf(const char *str, const char *fmt, ...) {
    int *as_int = NULL;
    char *as_string = NULL;
    struct __spec sp;
    va_list ap;
    va_start(ap, fmt);
    if (size_right(str) < 0 || !__char_ok(fmt)) {
        errno = EINVAL;
        va_end(ap);
        return -1;
    }
    long i = 0;
    int k = 0;
    while (__char_at(fmt, i) != 0) {
        if (fmt[i] != '%') {
            i++;
            continue;
        }
        if (!__parse_spec(fmt, i + 1, &sp) || (sp.conv != 'd' && sp.conv != 's' && sp.conv != '%') || sp.lng) {
            errno = EINVAL;
            va_end(ap);
            return -1;
        }
        i = sp.next;
        if (sp.conv == '%') {
            continue;
        }
        void *arg = sp.conv == 'd' ? get_vararg(k, type(&as_int)) : get_vararg(k, type(&as_string));
        if (arg == NULL) {
            errno = EINVAL;
            va_end(ap);
            return -1;
        }
        k++;
    }
    if (k != count_varargs()) {
        errno = EINVAL;
        va_end(ap);
        return -1;
    }
    long f = 0;
    long s = 0;
    int assigned = 0;
    while (__char_at(fmt, f) != 0) {
        int fc = __char_at(fmt, f);
        if (isspace(fc)) {
            while (isspace(__char_at(str, s))) {
                s++;
            }
            f++;
            continue;
        }
        if (fc != '%') {
            if (__char_at(str, s) != fc) {
                break;
            }
            s++;
            f++;
            continue;
        }
        __parse_spec(fmt, f + 1, &sp);
        f = sp.next;
        if (sp.conv == '%') {
            if (__char_at(str, s) != '%') {
                break;
            }
            s++;
            continue;
        }
        while (isspace(__char_at(str, s))) {
            s++;
        }
        if (__char_at(str, s) == 0) {
            if (assigned == 0) {
                va_end(ap);
                return EOF;
            }
            break;
        }
        if (sp.conv == 'd') {
            int *dst = va_arg(ap, int *);
            int neg = 0;
            int c = __char_at(str, s);
            if (c == '-' || c == '+') {
                neg = c == '-';
                s++;
            }
            if (!isdigit(__char_at(str, s))) {
                break;
            }
            long v = 0;
            while (isdigit(__char_at(str, s))) {
                v = v * 10 + (__char_at(str, s) - '0');
                s++;
            }
            if (try_cast(dst, type(dst)) == NULL) {
                errno = EINVAL;
                break;
            }
            *dst = (int)(neg ? -v : v);
            assigned++;
        } else {
            char *dst = va_arg(ap, char *);
            long n = 0;
            long max = sp.width > 0 ? sp.width : LONG_MAX;
            while (n < max && __char_at(str, s) != 0 && !isspace(__char_at(str, s))) {
                /* Leave room for the terminator. */
                if (__char_ok(dst + n + 1)) {
                    dst[n] = str[s];
                    n++;
                }
                s++;
            }
            if (__char_ok(dst + n)) {
                dst[n] = '\0';
            } else {
                errno = EINVAL;
            }
            assigned++;
        }
    }
    va_end(ap);
    return assigned;
}

/* ---- higher-order functions ---- */

/* Stable bottom-up merge sort over element-sized byte records. */
void qsort(void *base, size_t nitems, size_t size, int (*compar)(const void *, const void *)) {
    if (size == 0 || nitems > SIZE_MAX / size) {
        errno = EINVAL;
        return;
    }
    if (size_right(base) < 0 || (size_t)size_right(base) < nitems * size) {
        errno = EINVAL;
        return;
    }
    if (try_cast(&compar, type(compar)) == NULL) {
        errno = EINVAL;
        return;
    }
    if (nitems < 2) {
        return;
    }
    char *a = base;
    char *tmp = __host_malloc(nitems * size);
    if (tmp == NULL) {
        errno = ENOMEM;
        return;
    }
    /* Probe that records can be moved as whole cells before sorting. */
    if (__host_memcpy(tmp, a, nitems * size) != 0) {
        __host_free(tmp);
        errno = EINVAL;
        return;
    }
    size_t width;
    for (width = 1; width < nitems; width = width * 2) {
        size_t lo;
        for (lo = 0; lo < nitems; lo = lo + 2 * width) {
            size_t mid = lo + width < nitems ? lo + width : nitems;
            size_t hi = lo + 2 * width < nitems ? lo + 2 * width : nitems;
            size_t i = lo;
            size_t j = mid;
            size_t k = lo;
            while (i < mid && j < hi) {
                if (compar(a + j * size, a + i * size) < 0) {
                    __host_memcpy(tmp + k * size, a + j * size, size);
                    j++;
                } else {
                    __host_memcpy(tmp + k * size, a + i * size, size);
                    i++;
                }
                k++;
            }
            while (i < mid) {
                __host_memcpy(tmp + k * size, a + i * size, size);
                i++;
                k++;
            }
            while (j < hi) {
                __host_memcpy(tmp + k * size, a + j * size, size);
                j++;
                k++;
            }
        }
        __host_memcpy(a, tmp, nitems * size);
    }
    __host_free(tmp);
}

void *bsearch(const void *key, const void *base, size_t nitems, size_t size, int (*compar)(const void *, const void *)) {
    if (size == 0 || nitems > SIZE_MAX / size) {
        errno = EINVAL;
        return NULL;
    }
    if (size_right(base) < 0 || (size_t)size_right(base) < nitems * size) {
        errno = EINVAL;
        return NULL;
    }
    if (size_right(key) < 0 || (size_t)size_right(key) < size) {
        errno = EINVAL;
        return NULL;
    }
    if (try_cast(&compar, type(compar)) == NULL) {
        errno = EINVAL;
        return NULL;
    }
    const char *a = base;
    size_t lo = 0;
    size_t hi = nitems;
    while (lo < hi) {
        size_t mid = lo + (hi - lo) / 2;
        int c = compar(key, a + mid * size);
        if (c == 0) {
            return (void *)(a + mid * size);
        }
        if (c < 0) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    return NULL;
}
