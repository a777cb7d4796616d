#include <stdio.h>
#include <string.h>
#include "chow_kunneth.h"

int main(void) {
    CkRing *ring = NULL;
    if (ck_ring_from_spec("{\"kind\":\"projective_space\",\"n\":2}", &ring) != CK_STATUS_OK) return 10;
    CkProjectorSet *set = NULL;
    if (ck_projectors_build(ring, &set) != CK_STATUS_OK) return 11;
    bool pass = false;
    if (ck_projectors_verify(set, &pass, NULL) != CK_STATUS_OK || !pass) return 12;
    CkRing *bad = NULL;
    if (ck_ring_from_spec("{", &bad) != CK_STATUS_MALFORMED) return 13;
    const char *msg = ck_last_error_message();
    if (msg == NULL || strlen(msg) == 0) return 14;
    printf("members=%zu\n", ck_projectors_len(set));
    ck_projectors_free(set);
    ck_ring_free(ring);
    return 0;
}
