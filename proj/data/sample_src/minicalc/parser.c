#include "minicalc.h"

static long apply(long a, int op, long b, struct lexer *lx)
{
    if (op == '+') {
        return a + b;
    } else if (op == '-') {
        return a - b;
    } else if (op == '*') {
        return a * b;
    } else {
        if (b == 0) {
            report_error(lx, "division by zero");
            return 0;
        }
        return a / b;
    }
}

long parse_primary(struct lexer *lx, struct token *tok)
{
    if (tok->kind == TOK_NUM) {
        long v = tok->value;
        next_token(lx, tok);
        return v;
    }
    if (tok->kind == TOK_LPAREN) {
        next_token(lx, tok);
        long v = parse_expr(lx, tok, 0);
        if (tok->kind != TOK_RPAREN) {
            report_error(lx, "missing )");
        } else {
            next_token(lx, tok);
        }
        return v;
    }
    report_error(lx, "expected operand");
    return 0;
}

long parse_expr(struct lexer *lx, struct token *tok, int min_prec)
{
    long lhs = parse_primary(lx, tok);
    for (;;) {
        if (tok->kind != TOK_OP) {
            break;
        }
        int op = (int)tok->value;
        int prec = (op == '*' || op == '/') ? 2 : 1;
        if (prec < min_prec) {
            break;
        }
        next_token(lx, tok);
        long rhs = parse_expr(lx, tok, prec + 1);
        if (lx->errors == 0) {
            if (lx->trace) {
                if (lx->depth < 16) {
                    trace_step(lx, lhs, op, rhs);
                }
            }
        }
        lhs = apply(lhs, op, rhs, lx);
    }
    return lhs;
}
