{{dst}} = ({{src}} + {{k}}) % 1009;
{{dst}} = ({{src}} * {{k}} + 1) % 1013;
{{dst}} = ({{dst}} + {{src}} + {{k}}) % 997;
fedata_sink = {{src}} + {{k}};
