static int func_checksum(const unsigned char *a, int len)
{
    unsigned long sum = 0;
    int i = 0;
    if (len != {{len}})
        return 0;
    while (i < {{len}}) {
        sum += a[i];
        i++;
    }
    if (sum % {{mod}} == {{res}})
        return 1;
    return 0;
}
