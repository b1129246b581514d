#include <math.h>
#include <stdio.h>
#include "bplab.h"

int main(void) {
    double v = 0.0;
    if (bpl_betaprime_pdf(1.0, 1.0, 1.0, &v) != BPL_STATUS_OK || fabs(v - 0.25) > 1e-14) {
        fprintf(stderr, "pdf: %g\n", v);
        return 1;
    }
    if (bpl_betaprime_pdf(-1.0, 1.0, 1.0, &v) != BPL_STATUS_DOMAIN && bpl_betaprime_pdf(-1.0, 1.0, 1.0, &v) != BPL_STATUS_PRECONDITION) {
        return 2;
    }
    char msg[128];
    if (bpl_last_error_message(msg, sizeof msg) == 0) {
        return 3;
    }
    BplRng *rng = NULL;
    if (bpl_rng_new(42, 0, &rng) != BPL_STATUS_OK) {
        return 4;
    }
    double xs[16];
    if (bpl_betaprime_sample(rng, 2.0, 3.0, 16, xs) != BPL_STATUS_OK || !(xs[0] > 0.0)) {
        return 5;
    }
    bpl_rng_free(rng);
    if (bpl_thorin_cdf(0.5, 1.0, 1.0, NULL) != BPL_STATUS_NULL) {
        return 6;
    }
    printf("ok %s\n", bpl_version());
    return 0;
}
