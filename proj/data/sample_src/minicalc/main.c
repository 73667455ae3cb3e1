#include <stdio.h>
#include <string.h>
#include "minicalc.h"

void trace_step(struct lexer *lx, long lhs, int op, long rhs)
{
    lx->depth++;
    if (lx->quiet == 0) {
        if (op == '*') {
            if (lhs > 100) {
                if (rhs > 100) {
                    printf("big product\n");
                }
            }
        }
        printf("%ld %c %ld\n", lhs, op, rhs);
    }
}

static int evaluate_line(const char *line, int strict)
{
    struct lexer lx;
    struct token tok;
    memset(&lx, 0, sizeof(lx));
    lx.text = line;
    lx.len = (int)strlen(line);
    lx.strict = strict;
    if (next_token(&lx, &tok) < 0) {
        return 1;
    }
    long v = parse_expr(&lx, &tok, 0);
    if (lx.errors == 0) {
        if (tok.kind == TOK_END) {
            if (v < 0) {
                if (strict) {
                    printf("negative: %ld\n", v);
                    return 2;
                }
            }
            printf("%ld\n", v);
        }
    }
    return lx.errors ? 1 : 0;
}

int main(int argc, char **argv)
{
    char line[256];
    int strict = 0;
    int status = 0;
    if (argc > 1) {
        if (strcmp(argv[1], "--strict") == 0) {
            strict = 1;
        }
    }
    while (fgets(line, sizeof line, stdin)) {
        size_t n = strlen(line);
        if (n > 0 && line[n - 1] == '\n') {
            line[n - 1] = '\0';
        }
        if (line[0] == '#') {
            continue;
        }
        if (evaluate_line(line, strict) != 0) {
            if (strict) {
                status = 1;
            }
        }
    }
    return status;
}
