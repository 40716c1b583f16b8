/* cc -Iinclude examples/solve.c -L../../target/debug -lpinchlink_ffi -o solve */
#include <stdio.h>
#include "pinchlink.h"

int main(void) {
    PlConfig *cfg = pl_config_new();
    PlPowerSolution s;
    if (pl_config_set(cfg, "snr_target_linear", "25dB") != PL_STATUS_OK ||
        pl_solve(cfg, 15.0, 5.0, &s) != PL_STATUS_OK) {
        fprintf(stderr, "pinchlink: %s\n", pl_last_error_message());
        pl_config_free(cfg);
        return 1;
    }
    printf("x_pin = %.4f m, P1 = %.4e W, total = %.4f W\n", s.x_pin_m, s.p1_w, s.total_power_w);
    pl_config_free(cfg);
    return 0;
}
