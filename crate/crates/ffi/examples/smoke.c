/* Build the library, then:
 *   cc -I crates/ffi/include crates/ffi/examples/smoke.c \
 *      -L target/debug -lhypvis_ffi -lm -o smoke && LD_LIBRARY_PATH=target/debug ./smoke
 */
#include <stdio.h>

#include "hypvis.h"

int main(void) {
    HvComplex a = {0.0, 2.0}, b = {-1.0, 1.0};
    HvVisualAngle v;
    if (hv_visual_angle(a, b, &v) != HV_OK) {
        fprintf(stderr, "error: %s\n", hv_last_error());
        return 1;
    }
    printf("hypvis %s\n", hv_version());
    printf("v = %.15f at d = %.15f (branch %d)\n", v.angle, v.attaining_point, v.branch);

    HvCatalog *cat = NULL;
    HvComplex p;
    if (hv_catalog_new(a, b, &cat) != HV_OK || hv_catalog_get(cat, HV_FIELD_P, &p) != HV_OK) {
        fprintf(stderr, "error: %s\n", hv_last_error());
        hv_catalog_free(cat);
        return 1;
    }
    printf("p = %.15f%+.15fi\n", p.re, p.im);
    hv_catalog_free(cat);

    HvDistortion *d = NULL;
    double lambda, bound;
    if (hv_distortion_new(2.0, &d) != HV_OK) {
        fprintf(stderr, "error: %s\n", hv_last_error());
        return 1;
    }
    hv_distortion_lambda(d, &lambda);
    hv_distortion_holder_bound(d, 0.7853981634, &bound);
    printf("lambda(2) = %.12f, bound = %.12f\n", lambda, bound);
    hv_distortion_free(d);

    double y;
    if (hv_mu(2.0, &y) != HV_OK) {
        printf("mu(2): %s\n", hv_last_error());
    }
    return 0;
}
