import { ApiError, httpApi, type DraftApi } from './api.js';
import { buildBoard, type SortOrder } from './state.js';
import { renderApp, type UiState } from './render.js';
import type { HintsView, SessionView, Side, WhatIfView } from './types.js';

const POLL_MS = 300;

/** Single-page controller: one session, one in-flight mutation at a time. */
export class App {
  session: SessionView | null = null;
  hints: HintsView | null = null;
  whatIf: Record<string, number> = {};
  sort: SortOrder = { by: 'max' };
  busy = false;
  hintsOn = false;
  toast: string | null = null;
  error: string | null = null;
  private pollTimer: ReturnType<typeof setTimeout> | null = null;
  private retry: (() => void) | null = null;

  constructor(
    private root: HTMLElement,
    private api: DraftApi,
  ) {}

  mount(): void {
    this.root.addEventListener('click', (event) => this.onClick(event));
    this.root.addEventListener('change', (event) => this.onChange(event));
    this.root.addEventListener('submit', (event) => {
      event.preventDefault();
      void this.startFromForm();
    });
    this.root.addEventListener('mouseover', (event) => this.onHover(event));
    this.render();
  }

  render(): void {
    const vm = this.session
      ? buildBoard(this.session, {
          hints: this.hintsOn ? this.hints : null,
          whatIf: this.whatIf,
          sort: this.sort,
        })
      : null;
    const ui: UiState = {
      busy: this.busy,
      hintsOn: this.hintsOn,
      toast: this.toast,
      error: this.error,
    };
    this.root.innerHTML = renderApp(vm, ui);
  }

  // -- event wiring ---------------------------------------------------------

  private onClick(event: Event): void {
    const target = event.target as HTMLElement | null;
    if (!target) return;
    const pick = target.closest<HTMLElement>('[data-pick]');
    if (pick && !(pick as HTMLButtonElement).disabled) {
      void this.pick(pick.dataset.pick as string);
      return;
    }
    const sort = target.closest<HTMLElement>('[data-sort]');
    if (sort) {
      const key = sort.dataset.sort as string;
      this.sort = key === 'max' ? { by: 'max' } : { by: 'task', task: Number(key.split(':')[1]) };
      this.render();
      return;
    }
    if (target.closest('[data-action="retry"]')) {
      const retry = this.retry;
      this.error = null;
      this.retry = null;
      if (retry) retry();
      else this.render();
    }
  }

  private onChange(event: Event): void {
    const target = event.target as HTMLElement | null;
    if (target?.matches('[data-action="toggle-hints"]')) {
      this.hintsOn = (target as HTMLInputElement).checked;
      if (this.hintsOn) void this.refreshHints();
      else this.render();
    }
  }

  private onHover(event: Event): void {
    const target = event.target as HTMLElement | null;
    const row = target?.closest<HTMLElement>('tr[data-agent]');
    if (!row || !row.classList.contains('free')) return;
    void this.probe(row.dataset.agent as string);
  }

  // -- actions ---------------------------------------------------------------

  private async startFromForm(): Promise<void> {
    const form = this.root.querySelector<HTMLFormElement>('[data-form="start"]');
    if (!form) return;
    const instanceText = (form.elements.namedItem('instance') as HTMLTextAreaElement).value;
    const side = (form.elements.namedItem('side') as HTMLSelectElement).value as Side;
    const policy = (form.elements.namedItem('policy') as HTMLSelectElement)
      .value as 'exact' | 'budgeted';
    let instance: unknown;
    try {
      instance = JSON.parse(instanceText);
    } catch {
      this.toast = 'the pool is not valid JSON';
      this.render();
      return;
    }
    await this.start({ instance, human_side: side, policy });
  }

  async start(request: Parameters<DraftApi['createSession']>[0]): Promise<void> {
    await this.guard(
      async () => {
        this.session = await this.api.createSession(request);
        this.hints = null;
        this.whatIf = {};
      },
      () => void this.start(request),
    );
    this.schedulePoll();
  }

  async pick(agent: string): Promise<void> {
    if (this.busy || !this.session) return;
    const id = this.session.id;
    await this.guard(
      async () => {
        try {
          const exchange = await this.api.submitMove(id, agent);
          this.afterUpdate(exchange.session);
        } catch (err) {
          if (err instanceof ApiError && err.status === 409) {
            // stale or illegal pick: show why and refetch the truth
            this.toast = err.message;
            this.afterUpdate(await this.api.getSession(id));
            return;
          }
          throw err;
        }
      },
      () => void this.pick(agent),
    );
    this.schedulePoll();
  }

  async refreshHints(): Promise<void> {
    if (!this.session || this.session.status !== 'awaiting_human') {
      this.render();
      return;
    }
    try {
      this.hints = await this.api.getHints(this.session.id);
    } catch {
      this.hints = null; // hints are decoration; ignore failures
    }
    this.render();
  }

  /** What-if lookup for one agent, cached until the position changes. */
  async probe(agent: string): Promise<void> {
    if (!this.session || agent in this.whatIf) return;
    if (this.session.status !== 'awaiting_human') return;
    let view: WhatIfView;
    try {
      view = await this.api.whatIf(this.session.id, agent);
    } catch {
      return;
    }
    this.whatIf[agent] = view.score;
    this.render();
  }

  // -- machinery --------------------------------------------------------------

  /** Run one mutation with the busy flag held; network failure sets the retry banner. */
  private async guard(action: () => Promise<void>, retry: () => void): Promise<void> {
    this.busy = true;
    this.toast = null;
    this.render();
    try {
      await action();
      this.error = null;
    } catch (err) {
      this.error = err instanceof Error ? err.message : 'request failed';
      this.retry = retry;
    } finally {
      this.busy = false;
      this.render();
    }
  }

  private afterUpdate(session: SessionView): void {
    this.session = session;
    this.whatIf = {};
    this.hints = null;
    if (this.hintsOn && session.status === 'awaiting_human') void this.refreshHints();
  }

  private schedulePoll(): void {
    if (this.pollTimer !== null) return;
    if (this.session?.status !== 'engine_thinking') return;
    this.pollTimer = setTimeout(() => {
      this.pollTimer = null;
      void this.poll();
    }, POLL_MS);
  }

  private async poll(): Promise<void> {
    if (!this.session) return;
    try {
      this.afterUpdate(await this.api.getSession(this.session.id));
    } catch {
      // transient; keep polling
    }
    this.render();
    this.schedulePoll();
  }
}

function boot(): void {
  const root = document.getElementById('app');
  if (root) new App(root, httpApi()).mount();
}

if (typeof document !== 'undefined' && document.getElementById('app')) boot();
