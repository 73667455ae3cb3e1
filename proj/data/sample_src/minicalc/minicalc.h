#ifndef MINICALC_H
#define MINICALC_H

enum token_kind { TOK_END, TOK_NUM, TOK_OP, TOK_LPAREN, TOK_RPAREN };

struct token {
    enum token_kind kind;
    long value;
};

struct lexer {
    const char *text;
    int len;
    int pos;
    int errors;
    int strict;
    int quiet;
    int trace;
    int depth;
};

int next_token(struct lexer *lx, struct token *tok);
void report_error(struct lexer *lx, const char *msg);
long parse_primary(struct lexer *lx, struct token *tok);
long parse_expr(struct lexer *lx, struct token *tok, int min_prec);
void trace_step(struct lexer *lx, long lhs, int op, long rhs);

#endif
