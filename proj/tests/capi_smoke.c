/* The public header used from C: load, query, free. */
#include <math.h>
#include <stdio.h>

#include "tendonsim/tendonsim.h"

static int failures = 0;

static void check(int ok, const char* what) {
  if (!ok) {
    fprintf(stderr, "FAILED: %s (%s)\n", what, ts_last_error());
    ++failures;
  }
}

int main(void) {
  ts_actuator* a = NULL;
  ts_joint* j = NULL;
  double tau = 0.0;
  char* summary = NULL;

  check(ts_actuator_load(TENDONSIM_CONFIG_DIR "/eca.cfg", 1, &a) == TS_OK, "load actuator");
  check(ts_joint_new(a, a, 10.0, 0.1, 0.001, &j) == TS_OK, "build joint");
  check(ts_joint_absolute_max_torque(j, &tau) == TS_OK && fabs(tau - 2529.0) < 1e-9,
        "absolute max torque");
  check(ts_joint_max_acceleration(j, 1e3, &tau) == TS_ERR_OUT_OF_MODEL, "out of model status");
  check(ts_lift_simulate(TENDONSIM_CONFIG_DIR "/lift_single.cfg", 0, &summary) == TS_OK,
        "lift summary");
  ts_string_free(summary);
  ts_joint_free(j);
  ts_actuator_free(a);

  if (failures == 0) printf("C API smoke test passed\n");
  return failures == 0 ? 0 : 1;
}
