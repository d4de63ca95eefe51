#include <math.h>
#include <stdio.h>
#include "affsphere.h"

int main(void) {
    double v = 0.0;
    if (affs_holomorphic_pairing(0.3, 1.5, &v) != AFFS_STATUS_OK) return 1;
    if (fabs(v - 16.0 * 1.5 * 1.5) > 1e-9) return 2;

    AffsConfig *cfg = affs_config_new();
    affs_config_set_samples(cfg, 3);
    AffsReport *report = NULL;
    if (affs_run_suite("rep", cfg, &report) != AFFS_STATUS_OK) return 3;
    bool passed = false;
    affs_report_all_passed(report, &passed);
    affs_report_free(report);

    if (affs_run_suite("nope", cfg, &report) != AFFS_STATUS_UNKNOWN_SUITE) return 4;
    char msg[256];
    size_t needed = 0;
    if (affs_last_error(msg, sizeof msg, &needed) != AFFS_STATUS_OK) return 5;
    affs_config_free(cfg);
    printf("pairing=%g passed=%d error=%s\n", v, passed, msg);
    return passed ? 0 : 6;
}
