#include <stdio.h>
#include <string.h>
#include "palper.h"

#define CHECK(cond)                                             \
    do {                                                        \
        if (!(cond)) {                                          \
            fprintf(stderr, "%s:%d: %s\n", __FILE__, __LINE__, #cond); \
            return 1;                                           \
        }                                                       \
    } while (0)

int main(void) {
    PalperWord *w = NULL;
    CHECK(palper_word_parse("accabaccab", &w) == PALPER_STATUS_OK);
    CHECK(palper_word_len(w) == 10);

    size_t p = 0;
    CHECK(palper_least_period(w, &p) == PALPER_STATUS_OK && p == 5);

    char *json = NULL;
    CHECK(palper_detect_json(w, &json) == PALPER_STATUS_OK);
    CHECK(strstr(json, "\"half_period\":\"5/2\"") != NULL);
    palper_string_free(json);
    palper_word_free(w);

    PalperGWordParams g;
    CHECK(palper_gword_params(13, 49, 60, &g) == PALPER_STATUS_OK);
    CHECK(g.g == 12 && g.n == 48);

    CHECK(palper_word_parse("i:0,x", &w) == PALPER_STATUS_INVALID_INPUT);
    CHECK(palper_last_error() != NULL);

    printf("ok %s\n", palper_version());
    return 0;
}
