char *vul_var;
vul_var = (char *)malloc(20 * sizeof(char));
strcpy(vul_var, "CWE-761");
vul_var = vul_var + 1; /* key line */
free(vul_var);
