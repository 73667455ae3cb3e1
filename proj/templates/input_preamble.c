static unsigned char fedata_in[{{buflen}}];
static volatile long fedata_sink;

static void fedata_read_input(void)
{
    size_t got = fread(fedata_in, 1, {{len}}, stdin);
    fedata_sink = (long)got;
}
