#include <stdio.h>
#include "wqa.h"

int main(void) {
    const int64_t a[4] = {2, -1, -1, 2};
    WqaPresentation *p = NULL;
    if (wqa_presentation_new(a, 2, NULL, NULL, NULL, 3, &p) != WQA_STATUS_OK) {
        fprintf(stderr, "%s\n", wqa_last_error());
        return 2;
    }
    char *out = NULL;
    WqaStatus st = wqa_reduce(p, "E0 F0 - F0 E0", &out);
    if (st == WQA_STATUS_OK) {
        printf("%s\n", out);
        wqa_string_free(out);
    } else {
        fprintf(stderr, "%s\n", wqa_last_error());
    }
    wqa_presentation_free(p);
    return st == WQA_STATUS_OK ? 0 : 1;
}
