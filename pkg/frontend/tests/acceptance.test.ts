/**
 * End-to-end acceptance: the UI pipeline against a live recommender
 * service holding a small trained bundle.
 *
 * The bundle is trained through the recommender CLI and served by the
 * real HTTP service; the UI side below consists solely of the shipped
 * client, controller, and renderers.
 */

import { spawn, spawnSync, type ChildProcess } from "node:child_process";
import { mkdtempSync, rmSync } from "node:fs";
import { createServer } from "node:net";
import { tmpdir } from "node:os";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";
import { AppController } from "../src/controller.js";
import { renderApp } from "../src/render.js";

const FIXTURE = join(
  dirname(fileURLToPath(import.meta.url)),
  "fixtures",
  "make_toy_bundle.py",
);

function freePort(): Promise<number> {
  return new Promise((resolve, reject) => {
    const probe = createServer();
    probe.on("error", reject);
    probe.listen(0, "127.0.0.1", () => {
      const address = probe.address();
      if (address === null || typeof address === "string") {
        probe.close(() => reject(new Error("no port assigned")));
        return;
      }
      const port = address.port;
      probe.close(() => resolve(port));
    });
  });
}

function count(haystack: string, needle: string): number {
  return haystack.split(needle).length - 1;
}

function cards(html: string): string[] {
  return html.split('<article class="venue-card"').slice(1);
}

function venueOrder(html: string): string[] {
  return [...html.matchAll(/data-venue="([^"]+)"/g)].map((m) => m[1]!);
}

function queryTopicsSection(html: string): string {
  const match = html.match(/<section class="query-topics">.*?<\/section>/s);
  if (match === null) {
    throw new Error("no query topics section in:\n" + html);
  }
  return match[0];
}

let workdir: string;
let server: ChildProcess | null = null;
let serverLog = "";
let baseUrl = "";
let controller: AppController;
let lastHtml = "";

beforeAll(async () => {
  workdir = mkdtempSync(join(tmpdir(), "venuerec-ui-"));
  const fixture = spawnSync("python3", [FIXTURE, workdir], {
    encoding: "utf-8",
  });
  if (fixture.status !== 0) {
    throw new Error(
      `fixture failed (${fixture.status}):\n${fixture.stdout}\n${fixture.stderr}`,
    );
  }

  const port = await freePort();
  baseUrl = `http://127.0.0.1:${port}`;
  server = spawn(
    "venuerec",
    ["serve", "--model", join(workdir, "toy.bundle"), "--port", String(port)],
    { stdio: ["ignore", "pipe", "pipe"] },
  );
  server.stdout?.on("data", (chunk: Buffer) => (serverLog += chunk.toString()));
  server.stderr?.on("data", (chunk: Buffer) => (serverLog += chunk.toString()));

  const deadline = Date.now() + 15000;
  for (;;) {
    if (server.exitCode !== null) {
      throw new Error(`service exited early:\n${serverLog}`);
    }
    try {
      const response = await fetch(`${baseUrl}/health`);
      if (response.ok) {
        break;
      }
    } catch {
      // Not listening yet.
    }
    if (Date.now() > deadline) {
      throw new Error(`service did not come up:\n${serverLog}`);
    }
    await new Promise((resolve) => setTimeout(resolve, 100));
  }

  controller = new AppController(new ApiClient(baseUrl), (state) => {
    lastHtml = renderApp(state);
  });
}, 120_000);

afterAll(() => {
  server?.kill();
  if (workdir) {
    rmSync(workdir, { recursive: true, force: true });
  }
});

describe("UI against a live toy service", () => {
  it("submits a query and renders exactly k venue cards with 3 topics of 5 terms", async () => {
    controller.setTitle("v01w00 study");
    controller.setAbstract("v01w02 v01w03 common01 methods");
    controller.addKeyword("v01w04");
    controller.setK(3);
    await controller.submit();

    expect(controller.state.error).toBeNull();
    const rendered = cards(lastHtml);
    expect(rendered).toHaveLength(3);
    for (const card of rendered) {
      const topics = card.split('<li class="topic"').slice(1);
      expect(topics).toHaveLength(3);
      for (const topic of topics) {
        expect(count(topic, 'class="term"')).toBe(5);
      }
    }
    expect(count(queryTopicsSection(lastHtml), 'class="topic"')).toBeGreaterThan(0);
    expect(venueOrder(lastHtml)[0]).toBe("venue01");
  });

  it("renders identical results with no change markers on an unchanged resubmit", async () => {
    const before = lastHtml;
    await controller.submit();
    expect(lastHtml).toBe(before);
    expect(lastHtml).not.toContain('class="marker');
  });

  it("appends venues without reordering the prefix when k increases", async () => {
    const prefix = venueOrder(lastHtml);
    expect(prefix).toHaveLength(3);

    controller.setK(5);
    await controller.submit();

    const order = venueOrder(lastHtml);
    expect(order).toHaveLength(5);
    expect(order.slice(0, 3)).toEqual(prefix);

    const rendered = cards(lastHtml);
    for (const card of rendered.slice(0, 3)) {
      expect(card.split("<ul")[0]).not.toContain('class="marker');
    }
    expect(lastHtml).not.toContain("marker-up");
    expect(lastHtml).not.toContain("marker-down");
    for (const card of rendered.slice(3)) {
      expect(card).toContain("marker-new");
    }
  });

  it("changes the displayed query topic weights when a matching keyword is added", async () => {
    const before = queryTopicsSection(lastHtml);
    controller.addKeyword("v03w00");
    await controller.submit();
    expect(controller.state.error).toBeNull();
    expect(queryTopicsSection(lastHtml)).not.toBe(before);
  });

  it("reports the toy bundle through the health endpoint", async () => {
    const health = await new ApiClient(baseUrl).health();
    expect(health.status).toBe("ok");
    expect(health.num_venues).toBe(6);
    expect(health.feature_kind).toBe("tfidf_plus_nmf");
  });
});
