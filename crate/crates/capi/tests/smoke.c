#include "orbicoh.h"
#include <stdio.h>
#include <string.h>

int main(void) {
    OrbicohGroup *g = NULL;
    if (orbicoh_group_builtin("klein4", &g) != OrbicohStatus_Ok) return 1;
    if (orbicoh_group_order(g) != 4) return 2;
    uint32_t dims[9] = {0};
    OrbicohStatus st = orbicoh_relative_cohomology(g, "cyclic", 2, "trivial", 8, dims);
    if (st != OrbicohStatus_Ok) return 3;
    const uint32_t expect[9] = {1, 0, 1, 3, 5, 7, 9, 11, 13};
    if (memcmp(dims, expect, sizeof expect) != 0) return 4;
    uint32_t period = 77;
    if (orbicoh_periodicity(dims, 9, 2, &period) != OrbicohStatus_Ok || period != 0) return 5;
    OrbicohGroup *bad = NULL;
    if (orbicoh_group_builtin("nope", &bad) != OrbicohStatus_InvalidArgument) return 6;
    char msg[128];
    orbicoh_last_error(msg, sizeof msg);
    if (strstr(msg, "UnknownName") == NULL) return 7;
    orbicoh_group_free(g);
    printf("capi smoke ok: dims 1 0 1 3 5 7 9 11 13, version %s\n", orbicoh_version());
    return 0;
}
