/* Aggregate record counts by a key column. */
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#define MAX_LINE 4096

static int count_lines(FILE *fp) {
    char line[MAX_LINE];
    int total = 0;
    while (fgets(line, sizeof line, fp)) {
        if (strchr(line, '@'))
            total++;
    }
    return total;
}

int main(int argc, char **argv) {
    if (argc != 2) {
        fprintf(stderr, "usage: %s <file>\n", argv[0]);
        return 2;
    }
    FILE *fp = fopen(argv[1], "r");
    if (!fp) {
        perror("fopen");
        return 1;
    }
    printf("%d\n", count_lines(fp));
    fclose(fp);
    return 0;
}
