/* SPDX-License-Identifier: GPL-2.0 */
/*
 * Wire record shared between the kernel programs and every user-space
 * decoder (src/wire.ts here, the Python consumer's wire module). The
 * struct is packed: exactly 165 bytes, little-endian fields in this
 * order. Golden vectors: tests/data/wire_golden.json at the repo root.
 */
#ifndef RANSOMGUARD_RECORDS_H
#define RANSOMGUARD_RECORDS_H

#define RG_COMM_MAX 16
#define RG_PATH_MAX 128 /* longer paths are truncated, not dropped */

#define RG_KIND_EXEC 1
#define RG_KIND_OPEN 2
#define RG_KIND_EXIT 3

/* Octal 0100 from fcntl open(2); the creation trigger Phase 2 counts. */
#define RG_O_CREAT 0100

struct event_record {
	__u32 pid;
	__u32 uid;
	char comm[RG_COMM_MAX];
	__u8 kind;
	__u32 flags;
	char path[RG_PATH_MAX];
	__u64 timestamp_ns;
} __attribute__((packed));

#endif /* RANSOMGUARD_RECORDS_H */
