import { afterEach, beforeEach, describe, expect, it } from "vitest";

import { ApiClient, ApiError } from "../src/api";
import { ReviewTestServer } from "./server";

describe("ApiClient", () => {
  let server: ReviewTestServer;
  let client: ApiClient;

  beforeEach(async () => {
    server = new ReviewTestServer();
    client = new ApiClient(await server.start());
  });

  afterEach(async () => {
    await server.stop();
  });

  it("returns parsed ranking payloads", async () => {
    const ranking = await client.ranking();
    expect(ranking.total).toBe(12);
    expect(ranking.candidates[0]?.candidate_id).toBe("c01");
    expect(ranking.candidates.map((c) => c.rank)).toEqual(
      Array.from({ length: 12 }, (_, i) => i + 1),
    );
  });

  it("honors offset and limit", async () => {
    const page = await client.ranking(2, 3);
    expect(page.candidates).toHaveLength(3);
    expect(page.candidates[0]?.rank).toBe(3);
  });

  it("maps the server error envelope onto ApiError", async () => {
    const err = await client.scorecard("nobody").catch((e: unknown) => e);
    expect(err).toBeInstanceOf(ApiError);
    expect((err as ApiError).code).toBe("not_found");
    expect((err as ApiError).status).toBe(404);
  });

  it("labels unreachable servers as network errors", async () => {
    const dead = new ApiClient("http://127.0.0.1:9");
    const err = await dead.nextBatch().catch((e: unknown) => e);
    expect(err).toBeInstanceOf(ApiError);
    expect((err as ApiError).code).toBe("network");
    expect((err as ApiError).status).toBe(0);
  });

  it("surfaces decision conflicts with their code", async () => {
    await client.nextBatch();
    await client.submitDecision({
      candidate_id: "c01", verdict: "advance", notes: "",
      reviewer_id: "r1", version: 1,
    });
    const err = await client
      .submitDecision({
        candidate_id: "c01", verdict: "reject", notes: "",
        reviewer_id: "r2", version: 1,
      })
      .catch((e: unknown) => e);
    expect((err as ApiError).code).toBe("version_conflict");
  });
});
