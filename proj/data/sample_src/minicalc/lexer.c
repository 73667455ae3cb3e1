/* minicalc: a tiny expression calculator used as a skeleton source. */
#include <ctype.h>
#include <stdio.h>
#include "minicalc.h"

static int is_op(int ch)
{
    if (ch == '+' || ch == '-') {
        return 1;
    } else if (ch == '*' || ch == '/') {
        return 2;
    }
    return 0;
}

int next_token(struct lexer *lx, struct token *tok)
{
    while (lx->pos < lx->len && isspace((unsigned char)lx->text[lx->pos])) {
        lx->pos++;
    }
    if (lx->pos >= lx->len) {
        tok->kind = TOK_END;
        return 0;
    }
    int ch = lx->text[lx->pos];
    if (isdigit(ch)) {
        long v = 0;
        while (lx->pos < lx->len && isdigit((unsigned char)lx->text[lx->pos])) {
            v = v * 10 + (lx->text[lx->pos] - '0');
            if (v > 1000000) {
                if (lx->strict) {
                    report_error(lx, "number too large");
                    return -1;
                }
            }
            lx->pos++;
        }
        tok->kind = TOK_NUM;
        tok->value = v;
        return 1;
    }
    switch (is_op(ch)) {
    case 1:
    case 2:
        tok->kind = TOK_OP;
        tok->value = ch;
        lx->pos++;
        return 1;
    default:
        break;
    }
    if (ch == '(' || ch == ')') {
        tok->kind = ch == '(' ? TOK_LPAREN : TOK_RPAREN;
        lx->pos++;
        return 1;
    }
    report_error(lx, "unexpected character '{'");
    return -1;
}

void report_error(struct lexer *lx, const char *msg)
{
    if (lx->quiet == 0) {
        if (msg) {
            fprintf(stderr, "error at %d: %s\n", lx->pos, msg);
        }
    }
    lx->errors++;
}
